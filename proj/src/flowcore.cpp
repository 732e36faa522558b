#include "flowgame/flowcore.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <set>

namespace flowgame {

UnboundedSigmaError::UnboundedSigmaError(Path witness)
    : std::runtime_error("an s-t path avoids the constraint set; no constrained cut exists"),
      witness_(std::move(witness))
{
}

namespace {

/// Integral max flow over network arcs with per-arc capacities. Arcs with
/// capacity zero are absent.
class ArcFlow
{
  public:
    ArcFlow(const FlowNetwork& net, std::vector<int> capacity)
        : net_(net), capacity_(std::move(capacity)), flow_(net.arc_count(), 0)
    {
    }

    int run()
    {
        int total = 0;
        while (int pushed = augment()) {
            total += pushed;
        }
        return total;
    }

    const std::vector<int>& flow() const { return flow_; }
    const std::vector<int>& capacity() const { return capacity_; }

    bool forward_residual(ArcId id) const
    {
        return flow_[static_cast<std::size_t>(id)] < capacity_[static_cast<std::size_t>(id)];
    }
    bool backward_residual(ArcId id) const { return flow_[static_cast<std::size_t>(id)] > 0; }

    /// Vertices reachable from the source in the residual graph.
    std::vector<bool> residual_reach() const
    {
        std::vector<bool> seen(net_.vertex_count(), false);
        std::deque<VertexId> queue{net_.source()};
        seen[static_cast<std::size_t>(net_.source())] = true;
        while (!queue.empty()) {
            VertexId v = queue.front();
            queue.pop_front();
            auto visit = [&](VertexId w) {
                if (!seen[static_cast<std::size_t>(w)]) {
                    seen[static_cast<std::size_t>(w)] = true;
                    queue.push_back(w);
                }
            };
            for (ArcId id : net_.out_arcs(v)) {
                if (forward_residual(id)) {
                    visit(net_.arc(id).head);
                }
            }
            for (ArcId id : net_.in_arcs(v)) {
                if (backward_residual(id)) {
                    visit(net_.arc(id).tail);
                }
            }
        }
        return seen;
    }

  private:
    // BFS augmenting path; returns the amount pushed (0 if none).
    int augment()
    {
        struct Step
        {
            ArcId arc;
            bool forward;
        };
        std::vector<std::optional<Step>> parent(net_.vertex_count());
        std::vector<bool> seen(net_.vertex_count(), false);
        std::deque<VertexId> queue{net_.source()};
        seen[static_cast<std::size_t>(net_.source())] = true;
        while (!queue.empty() && !seen[static_cast<std::size_t>(net_.sink())]) {
            VertexId v = queue.front();
            queue.pop_front();
            for (ArcId id : net_.out_arcs(v)) {
                VertexId w = net_.arc(id).head;
                if (!seen[static_cast<std::size_t>(w)] && forward_residual(id)) {
                    seen[static_cast<std::size_t>(w)] = true;
                    parent[static_cast<std::size_t>(w)] = Step{id, true};
                    queue.push_back(w);
                }
            }
            for (ArcId id : net_.in_arcs(v)) {
                VertexId w = net_.arc(id).tail;
                if (!seen[static_cast<std::size_t>(w)] && backward_residual(id)) {
                    seen[static_cast<std::size_t>(w)] = true;
                    parent[static_cast<std::size_t>(w)] = Step{id, false};
                    queue.push_back(w);
                }
            }
        }
        if (!seen[static_cast<std::size_t>(net_.sink())]) {
            return 0;
        }
        int bottleneck = -1;
        for (VertexId v = net_.sink(); v != net_.source();) {
            const Step& step = *parent[static_cast<std::size_t>(v)];
            auto i = static_cast<std::size_t>(step.arc);
            int room = step.forward ? capacity_[i] - flow_[i] : flow_[i];
            bottleneck = bottleneck < 0 ? room : std::min(bottleneck, room);
            v = step.forward ? net_.arc(step.arc).tail : net_.arc(step.arc).head;
        }
        for (VertexId v = net_.sink(); v != net_.source();) {
            const Step& step = *parent[static_cast<std::size_t>(v)];
            auto i = static_cast<std::size_t>(step.arc);
            flow_[i] += step.forward ? bottleneck : -bottleneck;
            v = step.forward ? net_.arc(step.arc).tail : net_.arc(step.arc).head;
        }
        return bottleneck;
    }

    const FlowNetwork& net_;
    std::vector<int> capacity_;
    std::vector<int> flow_;
};

// Removes every directed cycle from the support of an integral flow.
void cancel_circulations(const FlowNetwork& net, std::vector<int>& flow)
{
    for (;;) {
        std::vector<int> state(net.vertex_count(), 0);  // 0 new, 1 on stack, 2 done
        std::vector<ArcId> stack;
        std::vector<ArcId> cycle;
        std::function<bool(VertexId)> dfs = [&](VertexId v) -> bool {
            state[static_cast<std::size_t>(v)] = 1;
            for (ArcId id : net.out_arcs(v)) {
                if (flow[static_cast<std::size_t>(id)] <= 0) {
                    continue;
                }
                VertexId w = net.arc(id).head;
                if (state[static_cast<std::size_t>(w)] == 1) {
                    auto it = std::find_if(stack.begin(), stack.end(), [&](ArcId a) { return net.arc(a).tail == w; });
                    cycle.assign(it, stack.end());
                    cycle.push_back(id);
                    return true;
                }
                if (state[static_cast<std::size_t>(w)] == 0) {
                    stack.push_back(id);
                    if (dfs(w)) {
                        return true;
                    }
                    stack.pop_back();
                }
            }
            state[static_cast<std::size_t>(v)] = 2;
            return false;
        };
        bool found = false;
        for (std::size_t v = 0; v < net.vertex_count() && !found; ++v) {
            if (state[v] == 0) {
                found = dfs(static_cast<VertexId>(v));
            }
        }
        if (!found) {
            return;
        }
        int amount = flow[static_cast<std::size_t>(cycle.front())];
        for (ArcId id : cycle) {
            amount = std::min(amount, flow[static_cast<std::size_t>(id)]);
        }
        for (ArcId id : cycle) {
            flow[static_cast<std::size_t>(id)] -= amount;
        }
    }
}

// Peels `count` s-t paths from an acyclic integral flow, smallest arc id first.
std::vector<Path> peel_paths(const FlowNetwork& net, std::vector<int> flow, int count)
{
    std::vector<Path> paths;
    for (int k = 0; k < count; ++k) {
        Path path;
        VertexId v = net.source();
        while (v != net.sink()) {
            ArcId next = -1;
            for (ArcId id : net.out_arcs(v)) {
                if (flow[static_cast<std::size_t>(id)] > 0 && (next < 0 || id < next)) {
                    next = id;
                }
            }
            if (next < 0) {
                throw std::logic_error("flow decomposition hit a dead end");
            }
            --flow[static_cast<std::size_t>(next)];
            path.push_back(next);
            v = net.arc(next).head;
        }
        paths.push_back(std::move(path));
    }
    return paths;
}

std::optional<Path> path_avoiding(const FlowNetwork& net, const ArcMask& forbidden)
{
    std::vector<ArcId> parent(net.vertex_count(), -1);
    std::vector<bool> seen(net.vertex_count(), false);
    std::deque<VertexId> queue{net.source()};
    seen[static_cast<std::size_t>(net.source())] = true;
    while (!queue.empty()) {
        VertexId v = queue.front();
        queue.pop_front();
        if (v == net.sink()) {
            Path path;
            for (VertexId x = v; x != net.source(); x = net.arc(parent[static_cast<std::size_t>(x)]).tail) {
                path.push_back(parent[static_cast<std::size_t>(x)]);
            }
            std::reverse(path.begin(), path.end());
            return path;
        }
        for (ArcId id : net.out_arcs(v)) {
            VertexId w = net.arc(id).head;
            if (forbidden[static_cast<std::size_t>(id)] || seen[static_cast<std::size_t>(w)]) {
                continue;
            }
            seen[static_cast<std::size_t>(w)] = true;
            parent[static_cast<std::size_t>(w)] = id;
            queue.push_back(w);
        }
    }
    return std::nullopt;
}

std::vector<int> constrained_capacities(const FlowNetwork& net, const ArcMask& constraint)
{
    if (constraint.size() != net.arc_count()) {
        throw std::invalid_argument("arc mask size does not match the network");
    }
    if (auto witness = path_avoiding(net, constraint)) {
        throw UnboundedSigmaError(*witness);
    }
    const int unbounded = static_cast<int>(net.arc_count()) + 1;
    std::vector<int> capacity(net.arc_count());
    for (std::size_t i = 0; i < capacity.size(); ++i) {
        capacity[i] = constraint[i] ? 1 : unbounded;
    }
    return capacity;
}

}  // namespace

int max_flow_value(const FlowNetwork& net, const ArcMask& usable)
{
    std::vector<int> capacity(net.arc_count());
    for (std::size_t i = 0; i < capacity.size(); ++i) {
        capacity[i] = usable[i] ? 1 : 0;
    }
    ArcFlow flow(net, std::move(capacity));
    return flow.run();
}

CoalitionValue coalition_value(const FlowNetwork& net, const Coalition& coalition)
{
    ArcMask usable = net.coalition_mask(coalition);
    std::vector<int> capacity(net.arc_count());
    for (std::size_t i = 0; i < capacity.size(); ++i) {
        capacity[i] = usable[i] ? 1 : 0;
    }
    ArcFlow flow(net, std::move(capacity));
    CoalitionValue result;
    result.value = flow.run();
    std::vector<int> f = flow.flow();
    cancel_circulations(net, f);
    result.paths = peel_paths(net, std::move(f), result.value);
    return result;
}

PathSystem max_partially_disjoint(const FlowNetwork& net, const ArcMask& constraint)
{
    ArcFlow flow(net, constrained_capacities(net, constraint));
    int value = flow.run();
    std::vector<int> f = flow.flow();
    cancel_circulations(net, f);
    return {peel_paths(net, std::move(f), value), constraint};
}

int sigma(const FlowNetwork& net, const ArcMask& constraint)
{
    ArcFlow flow(net, constrained_capacities(net, constraint));
    return flow.run();
}

ConstrainedCut min_constrained_cut(const FlowNetwork& net, const ArcMask& constraint)
{
    ArcFlow flow(net, constrained_capacities(net, constraint));
    flow.run();
    auto side = flow.residual_reach();
    ConstrainedCut cut;
    for (const auto& a : net.arcs()) {
        if (side[static_cast<std::size_t>(a.tail)] && !side[static_cast<std::size_t>(a.head)]) {
            if (!constraint[static_cast<std::size_t>(a.id)]) {
                throw std::logic_error("minimum cut crosses an unconstrained arc");
            }
            cut.arcs.push_back(a.id);
        }
    }
    return cut;
}

CutEnumeration enumerate_min_constrained_cuts(const FlowNetwork& net, const ArcMask& constraint, std::size_t cap)
{
    ArcFlow flow(net, constrained_capacities(net, constraint));
    flow.run();

    // Residual adjacency over vertices.
    const std::size_t n = net.vertex_count();
    std::vector<std::vector<VertexId>> adj(n);
    for (const auto& a : net.arcs()) {
        if (flow.forward_residual(a.id)) {
            adj[static_cast<std::size_t>(a.tail)].push_back(a.head);
        }
        if (flow.backward_residual(a.id)) {
            adj[static_cast<std::size_t>(a.head)].push_back(a.tail);
        }
    }

    // Tarjan SCC; components come out in reverse topological order.
    std::vector<int> comp(n, -1);
    std::vector<int> low(n, 0);
    std::vector<int> order(n, -1);
    std::vector<VertexId> stack;
    std::vector<bool> on_stack(n, false);
    int counter = 0;
    int components = 0;
    std::function<void(VertexId)> strongconnect = [&](VertexId v) {
        auto vi = static_cast<std::size_t>(v);
        order[vi] = low[vi] = counter++;
        stack.push_back(v);
        on_stack[vi] = true;
        for (VertexId w : adj[vi]) {
            auto wi = static_cast<std::size_t>(w);
            if (order[wi] < 0) {
                strongconnect(w);
                low[vi] = std::min(low[vi], low[wi]);
            } else if (on_stack[wi]) {
                low[vi] = std::min(low[vi], order[wi]);
            }
        }
        if (low[vi] == order[vi]) {
            for (;;) {
                VertexId w = stack.back();
                stack.pop_back();
                on_stack[static_cast<std::size_t>(w)] = false;
                comp[static_cast<std::size_t>(w)] = components;
                if (w == v) {
                    break;
                }
            }
            ++components;
        }
    };
    for (std::size_t v = 0; v < n; ++v) {
        if (order[v] < 0) {
            strongconnect(static_cast<VertexId>(v));
        }
    }

    const auto nc = static_cast<std::size_t>(components);
    std::vector<std::set<int>> succ(nc);
    std::vector<std::set<int>> pred(nc);
    for (std::size_t v = 0; v < n; ++v) {
        for (VertexId w : adj[v]) {
            int a = comp[v];
            int b = comp[static_cast<std::size_t>(w)];
            if (a != b) {
                succ[static_cast<std::size_t>(a)].insert(b);
                pred[static_cast<std::size_t>(b)].insert(a);
            }
        }
    }
    const int source_comp = comp[static_cast<std::size_t>(net.source())];
    const int sink_comp = comp[static_cast<std::size_t>(net.sink())];

    auto closure_from = [&](int start, const std::vector<std::set<int>>& edges) {
        std::vector<bool> seen(nc, false);
        std::vector<int> work{start};
        seen[static_cast<std::size_t>(start)] = true;
        while (!work.empty()) {
            int c = work.back();
            work.pop_back();
            for (int d : edges[static_cast<std::size_t>(c)]) {
                if (!seen[static_cast<std::size_t>(d)]) {
                    seen[static_cast<std::size_t>(d)] = true;
                    work.push_back(d);
                }
            }
        }
        return seen;
    };
    // Components reachable from s must be on the source side; components that
    // reach t must be on the sink side.
    auto forced_in = closure_from(source_comp, succ);
    auto forced_out = closure_from(sink_comp, pred);

    // Tarjan numbering is reverse topological, so walking component ids from
    // high to low visits predecessors first.
    std::vector<int> free_comps;
    for (int c = components - 1; c >= 0; --c) {
        if (!forced_in[static_cast<std::size_t>(c)] && !forced_out[static_cast<std::size_t>(c)]) {
            free_comps.push_back(c);
        }
    }

    std::set<ConstrainedCut> found;
    bool partial = false;
    std::vector<bool> inside = forced_in;
    auto emit = [&]() {
        ConstrainedCut cut;
        for (const auto& a : net.arcs()) {
            if (inside[static_cast<std::size_t>(comp[static_cast<std::size_t>(a.tail)])] &&
                !inside[static_cast<std::size_t>(comp[static_cast<std::size_t>(a.head)])]) {
                cut.arcs.push_back(a.id);
            }
        }
        found.insert(std::move(cut));
    };
    std::function<void(std::size_t)> branch = [&](std::size_t i) {
        if (found.size() >= cap) {
            partial = true;
            return;
        }
        if (i == free_comps.size()) {
            emit();
            return;
        }
        int c = free_comps[i];
        auto ci = static_cast<std::size_t>(c);
        bool forced = std::any_of(pred[ci].begin(), pred[ci].end(),
                                  [&](int p) { return inside[static_cast<std::size_t>(p)]; });
        if (forced) {
            inside[ci] = true;
            branch(i + 1);
            inside[ci] = false;
            return;
        }
        branch(i + 1);
        inside[ci] = true;
        branch(i + 1);
        inside[ci] = false;
    };
    branch(0);

    CutEnumeration result;
    result.cuts.assign(found.begin(), found.end());
    if (result.cuts.size() > cap) {
        result.cuts.resize(cap);
        partial = true;
    }
    result.partial = partial;
    return result;
}

}  // namespace flowgame
