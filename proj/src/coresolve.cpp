#include "flowgame/coresolve.hpp"

#include <algorithm>
#include <stdexcept>

namespace flowgame {

GameSigmas game_sigmas(const FlowNetwork& net)
{
    return {sigma(net, net.private_mask()), sigma(net, net.full_mask())};
}

Rational epsilon_star(const FlowNetwork& net)
{
    return game_sigmas(net).factor() - 1;
}

Allocation scale_allocation(const GameSigmas& sigmas, const Allocation& x, Scale to)
{
    Rational factor = to == Scale::Original ? sigmas.factor() : 1 / sigmas.factor();
    Allocation out;
    out.reserve(x.size());
    for (const auto& v : x) {
        out.push_back(v * factor);
    }
    return out;
}

ShortestPath shortest_st_path(const FlowNetwork& net, const Allocation& x)
{
    const std::size_t n = net.vertex_count();
    std::vector<std::optional<Rational>> dist(n);
    std::vector<ArcId> parent(n, -1);
    std::vector<bool> done(n, false);
    dist[static_cast<std::size_t>(net.source())] = Rational(0);
    for (;;) {
        std::optional<std::size_t> pick;
        for (std::size_t v = 0; v < n; ++v) {
            if (!done[v] && dist[v] && (!pick || *dist[v] < *dist[*pick])) {
                pick = v;
            }
        }
        if (!pick) {
            break;
        }
        done[*pick] = true;
        for (ArcId id : net.out_arcs(static_cast<VertexId>(*pick))) {
            auto head = static_cast<std::size_t>(net.arc(id).head);
            Rational candidate = *dist[*pick] + arc_length(net, x, id);
            if (!dist[head] || candidate < *dist[head]) {
                dist[head] = candidate;
                parent[head] = id;
            }
        }
    }
    auto sink = static_cast<std::size_t>(net.sink());
    if (!dist[sink]) {
        throw std::invalid_argument("sink is unreachable from the source");
    }
    ShortestPath result{*dist[sink], {}};
    for (VertexId v = net.sink(); v != net.source(); v = net.arc(parent[static_cast<std::size_t>(v)]).tail) {
        result.path.push_back(parent[static_cast<std::size_t>(v)]);
    }
    std::reverse(result.path.begin(), result.path.end());
    return result;
}

Membership auxiliary_core_membership(const FlowNetwork& net, const Allocation& x)
{
    if (x.size() != net.player_count()) {
        throw std::invalid_argument("allocation size does not match the player count");
    }
    Rational total = 0;
    for (const auto& v : x) {
        if (sgn(v) < 0) {
            throw std::invalid_argument("allocation has a negative entry");
        }
        total += v;
    }
    if (total != sigma(net, net.private_mask())) {
        throw std::invalid_argument("allocation does not sum to sigma_N");
    }
    ShortestPath shortest = shortest_st_path(net, x);
    if (shortest.length >= 1) {
        return {true, std::nullopt};
    }
    return {false, std::move(shortest.path)};
}

ApproxCore approximate_core(const FlowNetwork& net, std::size_t max_vertices)
{
    GameSigmas sigmas = game_sigmas(net);
    ApproxCore result;
    result.scaling_factor = sigmas.factor();
    result.epsilon_star = result.scaling_factor - 1;
    CutEnumeration cuts = enumerate_min_constrained_cuts(net, net.private_mask(), max_vertices);
    result.partial = cuts.partial;
    for (const auto& cut : cuts.cuts) {
        Allocation x(net.player_count(), Rational(0));
        for (ArcId id : cut.arcs) {
            x[static_cast<std::size_t>(net.player_index_of_arc(id))] = 1;
        }
        if (!auxiliary_core_membership(net, x).in_core) {
            throw std::logic_error("cut incidence vector fails core membership");
        }
        result.vertices.push_back(std::move(x));
    }
    return result;
}

PotentialCheck potential_characterization_check(const FlowNetwork& net, const Allocation& x)
{
    PotentialCheck check;
    check.phi = potential(net, x);
    const auto& phi = check.phi.phi;
    for (const auto& a : net.arcs()) {
        const auto& pu = phi[static_cast<std::size_t>(a.tail)];
        const auto& pv = phi[static_cast<std::size_t>(a.head)];
        if (!pu || !pv) {
            continue;  // off every s-t walk; the rows say nothing
        }
        Rational slack = arc_length(net, x, a.id) + *pu - *pv;
        if (sgn(slack) < 0) {
            check.failure = a.is_private() ? PotentialCheck::Failure::PrivateArc : PotentialCheck::Failure::PublicArc;
            check.arc = a.id;
            return check;
        }
    }
    if (check.phi.at(net.source()) != 0) {
        check.failure = PotentialCheck::Failure::SourceLevel;
        return check;
    }
    const auto& sink = phi[static_cast<std::size_t>(net.sink())];
    if (!sink || *sink != 1) {
        check.failure = PotentialCheck::Failure::SinkLevel;
    }
    return check;
}

std::string describe(PotentialCheck::Failure failure)
{
    switch (failure) {
    case PotentialCheck::Failure::None:
        return "holds";
    case PotentialCheck::Failure::PrivateArc:
        return "private arc row violated";
    case PotentialCheck::Failure::PublicArc:
        return "public arc row violated";
    case PotentialCheck::Failure::SourceLevel:
        return "phi(s) = 0 violated";
    case PotentialCheck::Failure::SinkLevel:
        return "phi(t) = 1 violated";
    }
    return "unknown";
}

}  // namespace flowgame
