#include "flowgame/generator.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <random>
#include <stdexcept>

namespace flowgame {

namespace {

constexpr int max_attempts = 200000;

void check(const GeneratorParams& p, int min_vertices, int min_private)
{
    if (p.vertices < min_vertices || p.vertices > 64) {
        throw std::invalid_argument("vertex count must lie in [" + std::to_string(min_vertices) + ", 64]");
    }
    if (p.private_arcs < min_private || p.private_arcs > 16) {
        throw std::invalid_argument("private arc count must lie in [" + std::to_string(min_private) + ", 16]");
    }
    if (p.public_arcs < 0 || p.private_arcs + p.public_arcs > 64) {
        throw std::invalid_argument("public arc count must be nonnegative with at most 64 arcs in total");
    }
    if (p.private_arcs + p.public_arcs < p.vertices - 1) {
        throw std::invalid_argument("too few arcs to connect " + std::to_string(p.vertices) + " vertices");
    }
}

std::vector<std::string> canonical_names(int n)
{
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i) {
        names.push_back(std::to_string(i));
    }
    return names;
}

// Vertex 0 is the source and n-1 the sink.
std::optional<FlowNetwork> draw(std::mt19937_64& rng, const GeneratorParams& p)
{
    const int n = p.vertices;
    std::vector<VertexId> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin() + 1, order.end() - 1, rng);

    std::vector<std::pair<VertexId, VertexId>> ends;
    for (int i = 0; i + 1 < n; ++i) {
        ends.emplace_back(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(i) + 1]);
    }
    std::uniform_int_distribution<int> position(0, n - 1);
    std::bernoulli_distribution forward(0.8);
    const int total = p.private_arcs + p.public_arcs;
    while (static_cast<int>(ends.size()) < total) {
        int a = position(rng);
        int b = position(rng);
        if (a == b) {
            continue;
        }
        if ((a < b) != forward(rng)) {
            std::swap(a, b);
        }
        ends.emplace_back(order[static_cast<std::size_t>(a)], order[static_cast<std::size_t>(b)]);
    }
    std::shuffle(ends.begin(), ends.end(), rng);

    std::vector<Arc> arcs;
    for (std::size_t i = 0; i < ends.size(); ++i) {
        Arc a;
        a.tail = ends[i].first;
        a.head = ends[i].second;
        if (static_cast<int>(i) < p.private_arcs) {
            a.owner = static_cast<PlayerId>(i) + 1;
        }
        arcs.push_back(a);
    }
    FlowNetwork net(canonical_names(n), 0, n - 1, std::move(arcs));
    if (!validate(net).ok()) {
        return std::nullopt;
    }
    return net;
}

}  // namespace

GeneratedInstance generate_instance(const GeneratorParams& params)
{
    check(params, 2, 1);
    std::mt19937_64 rng(params.seed);
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        if (auto net = draw(rng, params)) {
            return {std::move(*net), params, attempt};
        }
    }
    throw std::invalid_argument("no valid instance found within " + std::to_string(max_attempts) + " draws");
}

GeneratedInstance generate_bridged_instance(const GeneratorParams& params)
{
    check(params, 3, 2);
    GeneratorParams inner = params;
    inner.vertices -= 1;
    inner.private_arcs -= 1;
    GeneratedInstance base = generate_instance(inner);

    // Shift every vertex by one; the new vertex 0 feeds the old source.
    const FlowNetwork& old = base.network;
    std::vector<Arc> arcs;
    Arc bridge;
    bridge.tail = 0;
    bridge.head = old.source() + 1;
    bridge.owner = params.private_arcs;
    arcs.push_back(bridge);
    for (Arc a : old.arcs()) {
        a.id = -1;
        a.tail += 1;
        a.head += 1;
        arcs.push_back(a);
    }
    FlowNetwork net(canonical_names(params.vertices), 0, old.sink() + 1, std::move(arcs));
    return {std::move(net), params, base.rejections};
}

std::string emit_instance(const GeneratedInstance& instance)
{
    const GeneratorParams& p = instance.params;
    return "# generated seed=" + std::to_string(p.seed) + " vertices=" + std::to_string(p.vertices) +
           " private=" + std::to_string(p.private_arcs) + " public=" + std::to_string(p.public_arcs) +
           " rejections=" + std::to_string(instance.rejections) + "\n" + serialize_network(instance.network);
}

}  // namespace flowgame
