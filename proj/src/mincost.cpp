#include "flowgame/flowcore.hpp"

#include <algorithm>
#include <stdexcept>

namespace flowgame {

namespace {

struct ResidualEdge
{
    int to;
    int cap;
    Rational cost;
    int rev;       // index of the paired edge in adjacency of `to`
    int original;  // arc index in the input graph, -1 for super arcs
    bool forward;
};

class SuccessiveShortestPaths
{
  public:
    explicit SuccessiveShortestPaths(std::size_t n) : adj_(n) {}

    std::pair<int, int> add_edge(int from, int to, int cap, const Rational& cost, int original)
    {
        auto& out = adj_[static_cast<std::size_t>(from)];
        auto& in = adj_[static_cast<std::size_t>(to)];
        out.push_back({to, cap, cost, static_cast<int>(in.size()), original, true});
        in.push_back({from, 0, -cost, static_cast<int>(out.size()) - 1, original, false});
        return {from, static_cast<int>(out.size()) - 1};
    }

    // Pushes up to `limit` units from `s` to `t` along shortest residual paths.
    int run(int s, int t, int limit)
    {
        int total = 0;
        const std::size_t n = adj_.size();
        while (total < limit) {
            std::vector<std::optional<Rational>> dist(n);
            std::vector<std::pair<int, int>> parent(n, {-1, -1});
            dist[static_cast<std::size_t>(s)] = Rational(0);
            for (std::size_t round = 0; round + 1 < n; ++round) {
                bool changed = false;
                for (std::size_t v = 0; v < n; ++v) {
                    if (!dist[v]) {
                        continue;
                    }
                    for (std::size_t i = 0; i < adj_[v].size(); ++i) {
                        const auto& e = adj_[v][i];
                        if (e.cap <= 0) {
                            continue;
                        }
                        Rational candidate = *dist[v] + e.cost;
                        auto& target = dist[static_cast<std::size_t>(e.to)];
                        if (!target || candidate < *target) {
                            target = candidate;
                            parent[static_cast<std::size_t>(e.to)] = {static_cast<int>(v), static_cast<int>(i)};
                            changed = true;
                        }
                    }
                }
                if (!changed) {
                    break;
                }
            }
            if (!dist[static_cast<std::size_t>(t)]) {
                break;
            }
            int push = limit - total;
            for (int v = t; v != s;) {
                auto [u, i] = parent[static_cast<std::size_t>(v)];
                push = std::min(push, adj_[static_cast<std::size_t>(u)][static_cast<std::size_t>(i)].cap);
                v = u;
            }
            for (int v = t; v != s;) {
                auto [u, i] = parent[static_cast<std::size_t>(v)];
                auto& e = adj_[static_cast<std::size_t>(u)][static_cast<std::size_t>(i)];
                e.cap -= push;
                adj_[static_cast<std::size_t>(e.to)][static_cast<std::size_t>(e.rev)].cap += push;
                v = u;
            }
            total += push;
        }
        return total;
    }

    const ResidualEdge& edge(std::pair<int, int> handle) const
    {
        return adj_[static_cast<std::size_t>(handle.first)][static_cast<std::size_t>(handle.second)];
    }

  private:
    std::vector<std::vector<ResidualEdge>> adj_;
};

// Finds a directed cycle among used arcs avoiding negative-weight arcs.
std::optional<std::vector<int>> zero_cycle(const WeightedGraph& graph, const std::vector<bool>& used)
{
    const std::size_t n = graph.vertex_count;
    std::vector<std::vector<int>> out(n);
    for (std::size_t i = 0; i < graph.arcs.size(); ++i) {
        if (used[i] && sgn(graph.arcs[i].weight) >= 0) {
            out[static_cast<std::size_t>(graph.arcs[i].tail)].push_back(static_cast<int>(i));
        }
    }
    std::vector<int> state(n, 0);
    std::vector<int> stack;
    std::optional<std::vector<int>> found;
    auto dfs = [&](auto&& self, int v) -> bool {
        state[static_cast<std::size_t>(v)] = 1;
        for (int a : out[static_cast<std::size_t>(v)]) {
            int w = graph.arcs[static_cast<std::size_t>(a)].head;
            if (state[static_cast<std::size_t>(w)] == 1) {
                auto it = std::find_if(stack.begin(), stack.end(),
                                       [&](int b) { return graph.arcs[static_cast<std::size_t>(b)].tail == w; });
                std::vector<int> cycle(it, stack.end());
                cycle.push_back(a);
                found = std::move(cycle);
                return true;
            }
            if (state[static_cast<std::size_t>(w)] == 0) {
                stack.push_back(a);
                if (self(self, w)) {
                    return true;
                }
                stack.pop_back();
            }
        }
        state[static_cast<std::size_t>(v)] = 2;
        return false;
    };
    for (std::size_t v = 0; v < n; ++v) {
        if (state[v] == 0 && dfs(dfs, static_cast<int>(v))) {
            break;
        }
    }
    return found;
}

}  // namespace

std::optional<MinCostPaths> min_cost_disjoint_paths(const WeightedGraph& graph, int count)
{
    if (count < 0) {
        throw std::invalid_argument("negative path count");
    }
    const auto n = graph.vertex_count;
    const int super_source = static_cast<int>(n);
    const int super_sink = static_cast<int>(n) + 1;
    SuccessiveShortestPaths ssp(n + 2);

    std::vector<int> balance(n, 0);
    balance[static_cast<std::size_t>(graph.source)] += count;
    balance[static_cast<std::size_t>(graph.sink)] -= count;

    std::vector<std::pair<int, int>> handles;
    std::vector<bool> saturated(graph.arcs.size(), false);
    for (std::size_t i = 0; i < graph.arcs.size(); ++i) {
        const auto& a = graph.arcs[i];
        if (a.tail == a.head) {
            // A loop never helps a path; it only matters if negative.
            saturated[i] = sgn(a.weight) < 0;
            handles.emplace_back(-1, -1);
            continue;
        }
        if (sgn(a.weight) < 0) {
            // Route one unit through the arc up front; the residual then has
            // only nonnegative costs.
            saturated[i] = true;
            balance[static_cast<std::size_t>(a.head)] += 1;
            balance[static_cast<std::size_t>(a.tail)] -= 1;
            handles.push_back(ssp.add_edge(a.head, a.tail, 1, -a.weight, static_cast<int>(i)));
        } else {
            handles.push_back(ssp.add_edge(a.tail, a.head, 1, a.weight, static_cast<int>(i)));
        }
    }
    int required = 0;
    for (std::size_t v = 0; v < n; ++v) {
        if (balance[v] > 0) {
            ssp.add_edge(super_source, static_cast<int>(v), balance[v], Rational(0), -1);
            required += balance[v];
        } else if (balance[v] < 0) {
            ssp.add_edge(static_cast<int>(v), super_sink, -balance[v], Rational(0), -1);
        }
    }
    if (ssp.run(super_source, super_sink, required) < required) {
        return std::nullopt;
    }

    MinCostPaths result;
    result.used.assign(graph.arcs.size(), false);
    for (std::size_t i = 0; i < graph.arcs.size(); ++i) {
        if (handles[i].first < 0) {
            result.used[i] = saturated[i];
            continue;
        }
        bool flowing = ssp.edge(handles[i]).cap == 0;
        // A saturated negative arc was modelled reversed: flow on the reversed
        // edge cancels it.
        result.used[i] = saturated[i] ? !flowing : flowing;
    }
    while (auto cycle = zero_cycle(graph, result.used)) {
        for (int a : *cycle) {
            result.used[static_cast<std::size_t>(a)] = false;
        }
    }
    result.weight = 0;
    for (std::size_t i = 0; i < graph.arcs.size(); ++i) {
        if (result.used[i]) {
            result.weight += graph.arcs[i].weight;
        }
    }
    decompose_unit_flow(graph, result.used, result.paths, result.cycles);
    if (static_cast<int>(result.paths.size()) != count) {
        throw std::logic_error("min-cost flow decomposition produced the wrong number of paths");
    }
    return result;
}

void decompose_unit_flow(const WeightedGraph& graph, std::vector<bool> used, std::vector<std::vector<int>>& paths,
                         std::vector<std::vector<int>>& cycles)
{
    paths.clear();
    cycles.clear();
    const std::size_t n = graph.vertex_count;
    std::vector<std::vector<int>> out(n);
    for (std::size_t i = 0; i < graph.arcs.size(); ++i) {
        out[static_cast<std::size_t>(graph.arcs[i].tail)].push_back(static_cast<int>(i));
    }
    auto next_arc = [&](int v) {
        for (int a : out[static_cast<std::size_t>(v)]) {
            if (used[static_cast<std::size_t>(a)]) {
                return a;
            }
        }
        return -1;
    };

    int net_out = 0;
    for (std::size_t i = 0; i < graph.arcs.size(); ++i) {
        if (used[i] && graph.arcs[i].tail != graph.arcs[i].head) {
            if (graph.arcs[i].tail == graph.source) {
                ++net_out;
            }
            if (graph.arcs[i].head == graph.source) {
                --net_out;
            }
        }
    }

    for (int k = 0; k < net_out; ++k) {
        std::vector<int> walk;
        std::vector<int> at{graph.source};  // vertex before each walk arc, plus the current one
        int v = graph.source;
        while (v != graph.sink) {
            int a = next_arc(v);
            if (a < 0) {
                throw std::logic_error("unit flow is not balanced");
            }
            used[static_cast<std::size_t>(a)] = false;
            walk.push_back(a);
            v = graph.arcs[static_cast<std::size_t>(a)].head;
            auto seen = std::find(at.begin(), at.end(), v);
            if (seen != at.end()) {
                auto pos = static_cast<std::size_t>(seen - at.begin());
                std::vector<int> cycle(walk.begin() + static_cast<std::ptrdiff_t>(pos), walk.end());
                cycles.push_back(std::move(cycle));
                walk.resize(pos);
                at.resize(pos + 1);
            } else {
                at.push_back(v);
            }
        }
        paths.push_back(std::move(walk));
    }

    for (std::size_t i = 0; i < graph.arcs.size(); ++i) {
        if (!used[i]) {
            continue;
        }
        std::vector<int> walk;
        std::vector<int> at{graph.arcs[i].tail};
        int a = static_cast<int>(i);
        for (;;) {
            used[static_cast<std::size_t>(a)] = false;
            walk.push_back(a);
            int v = graph.arcs[static_cast<std::size_t>(a)].head;
            auto seen = std::find(at.begin(), at.end(), v);
            if (seen != at.end()) {
                auto pos = static_cast<std::size_t>(seen - at.begin());
                cycles.emplace_back(walk.begin() + static_cast<std::ptrdiff_t>(pos), walk.end());
                walk.resize(pos);
                at.resize(pos + 1);
                if (walk.empty()) {
                    break;
                }
                v = at.back();
            } else {
                at.push_back(v);
            }
            a = next_arc(v);
            if (a < 0) {
                throw std::logic_error("unit flow is not balanced");
            }
        }
    }
}

}  // namespace flowgame
