#include "flowgame/pathstruct.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>

namespace flowgame {

BaseSystem::BaseSystem(const FlowNetwork& net)
    : system_(max_partially_disjoint(net, net.private_mask())),
      positions_(net.vertex_count()),
      base_arc_(net.arc_count(), false)
{
    for (std::size_t p = 0; p < system_.paths.size(); ++p) {
        vertices_.push_back(walk_vertices(net, system_.paths[p]));
        const auto& vs = vertices_.back();
        for (std::size_t i = 0; i < vs.size(); ++i) {
            positions_[static_cast<std::size_t>(vs[i])].emplace_back(static_cast<int>(p), static_cast<int>(i));
        }
        for (ArcId id : system_.paths[p]) {
            base_arc_[static_cast<std::size_t>(id)] = true;
        }
    }
}

std::vector<JumpPair> find_jump_pairs(const FlowNetwork& net, const BaseSystem& base)
{
    const std::size_t n = net.vertex_count();
    auto off_base = [&](VertexId v) { return !base.covers(v); };
    auto usable = [&](ArcId id) { return !base.is_base_arc(id); };

    std::vector<JumpPair> pairs;
    for (std::size_t ui = 0; ui < n; ++ui) {
        const auto u = static_cast<VertexId>(ui);
        if (!base.covers(u)) {
            continue;
        }
        // Exhaustive DFS over simple off-base continuations from u. Every arc on
        // the stack when a base vertex is hit belongs to a jump to that vertex.
        std::map<VertexId, std::set<ArcId>> arcs_to;
        std::vector<ArcId> stack;
        std::vector<bool> on_path(n, false);
        on_path[ui] = true;
        auto dfs = [&](auto&& self, VertexId x) -> void {
            for (ArcId id : net.out_arcs(x)) {
                if (!usable(id)) {
                    continue;
                }
                VertexId y = net.arc(id).head;
                if (!off_base(y)) {
                    if (y != u) {
                        auto& bucket = arcs_to[y];
                        bucket.insert(stack.begin(), stack.end());
                        bucket.insert(id);
                    }
                    continue;
                }
                if (on_path[static_cast<std::size_t>(y)]) {
                    continue;
                }
                on_path[static_cast<std::size_t>(y)] = true;
                stack.push_back(id);
                self(self, y);
                stack.pop_back();
                on_path[static_cast<std::size_t>(y)] = false;
            }
        };
        dfs(dfs, u);

        for (const auto& [v, arcs] : arcs_to) {
            // Distances to v through off-base vertices, for the canonical jump.
            std::vector<int> to_v(n, std::numeric_limits<int>::max());
            std::deque<VertexId> queue;
            for (ArcId id : net.in_arcs(v)) {
                VertexId x = net.arc(id).tail;
                if (usable(id) && off_base(x) && to_v[static_cast<std::size_t>(x)] > 1) {
                    to_v[static_cast<std::size_t>(x)] = 1;
                    queue.push_back(x);
                }
            }
            while (!queue.empty()) {
                VertexId y = queue.front();
                queue.pop_front();
                for (ArcId id : net.in_arcs(y)) {
                    VertexId x = net.arc(id).tail;
                    if (usable(id) && off_base(x) &&
                        to_v[static_cast<std::size_t>(x)] == std::numeric_limits<int>::max()) {
                        to_v[static_cast<std::size_t>(x)] = to_v[static_cast<std::size_t>(y)] + 1;
                        queue.push_back(x);
                    }
                }
            }
            auto remaining = [&](ArcId id) {
                VertexId y = net.arc(id).head;
                if (y == v) {
                    return 0;
                }
                return off_base(y) ? to_v[static_cast<std::size_t>(y)] : std::numeric_limits<int>::max();
            };
            JumpPair pair;
            pair.u = u;
            pair.v = v;
            pair.jump_arcs.assign(arcs.begin(), arcs.end());
            VertexId x = u;
            while (x != v) {
                ArcId best = -1;
                for (ArcId id : net.out_arcs(x)) {
                    if (!usable(id) || remaining(id) == std::numeric_limits<int>::max()) {
                        continue;
                    }
                    if (best < 0 || remaining(id) < remaining(best) ||
                        (remaining(id) == remaining(best) && id < best)) {
                        best = id;
                    }
                }
                pair.representative.push_back(best);
                x = net.arc(best).head;
            }
            pairs.push_back(std::move(pair));
        }
    }
    std::sort(pairs.begin(), pairs.end());
    return pairs;
}

namespace {

struct WalkShape
{
    bool is_cycle = false;
};

WalkShape check_walk(const FlowNetwork& net, const Path& walk)
{
    if (walk.empty()) {
        throw std::invalid_argument("empty walk");
    }
    for (ArcId id : walk) {
        if (id < 0 || static_cast<std::size_t>(id) >= net.arc_count()) {
            throw std::invalid_argument("walk references an unknown arc");
        }
    }
    for (std::size_t i = 1; i < walk.size(); ++i) {
        if (net.arc(walk[i - 1]).head != net.arc(walk[i]).tail) {
            throw std::invalid_argument("walk arcs are not consecutive");
        }
    }
    auto vertices = walk_vertices(net, walk);
    WalkShape shape;
    shape.is_cycle = vertices.front() == vertices.back();
    if (shape.is_cycle) {
        vertices.pop_back();
    } else if (vertices.front() != net.source() || vertices.back() != net.sink()) {
        throw std::invalid_argument("walk is neither an s-t path nor a cycle");
    }
    std::vector<VertexId> sorted = vertices;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw std::invalid_argument("walk repeats a vertex");
    }
    return shape;
}

}  // namespace

Decomposition decompose(const FlowNetwork& net, const BaseSystem& base, const Path& walk)
{
    Decomposition result;
    result.is_cycle = check_walk(net, walk).is_cycle;

    Path arcs = walk;
    if (result.is_cycle) {
        auto start = std::find_if(arcs.begin(), arcs.end(), [&](ArcId id) { return base.covers(net.arc(id).tail); });
        if (start == arcs.end()) {
            result.pieces.push_back(Piece{arcs, true, std::nullopt});
            return result;
        }
        std::rotate(arcs.begin(), start, arcs.end());
    }

    // Base paths carrying each base arc.
    std::vector<std::set<int>> carriers(net.arc_count());
    for (std::size_t p = 0; p < base.system().paths.size(); ++p) {
        for (ArcId id : base.system().paths[p]) {
            carriers[static_cast<std::size_t>(id)].insert(static_cast<int>(p));
        }
    }

    std::size_t i = 0;
    while (i < arcs.size()) {
        ArcId id = arcs[i];
        if (base.is_base_arc(id)) {
            Piece piece;
            std::set<int> common = carriers[static_cast<std::size_t>(id)];
            piece.arcs.push_back(id);
            ++i;
            while (i < arcs.size() && base.is_base_arc(arcs[i])) {
                std::set<int> next;
                const auto& c = carriers[static_cast<std::size_t>(arcs[i])];
                std::set_intersection(common.begin(), common.end(), c.begin(), c.end(),
                                      std::inserter(next, next.begin()));
                if (next.empty()) {
                    break;
                }
                common = std::move(next);
                piece.arcs.push_back(arcs[i]);
                ++i;
            }
            result.pieces.push_back(std::move(piece));
            continue;
        }
        Piece piece;
        piece.is_jump = true;
        VertexId u = net.arc(id).tail;
        for (;;) {
            piece.arcs.push_back(arcs[i]);
            VertexId head = net.arc(arcs[i]).head;
            ++i;
            if (base.covers(head)) {
                piece.pair = std::pair(u, head);
                break;
            }
            if (i == arcs.size()) {
                throw std::logic_error("jump does not return to the base");
            }
        }
        if (piece.pair->first != piece.pair->second) {
            result.jump_pairs.push_back(*piece.pair);
        }
        result.pieces.push_back(std::move(piece));
    }
    return result;
}

RealizedJump realize_jump(const FlowNetwork& net, const BaseSystem& base, const JumpPair& pair)
{
    (void)net;
    if (!base.covers(pair.u) || !base.covers(pair.v)) {
        throw std::invalid_argument("jump endpoints must lie on the base system");
    }
    auto [pu, iu] = base.positions(pair.u).front();
    auto [pv, iv] = base.positions(pair.v).front();
    const auto& arcs_u = base.system().paths[static_cast<std::size_t>(pu)];
    const auto& arcs_v = base.system().paths[static_cast<std::size_t>(pv)];
    const auto& verts_u = base.path_vertices(pu);
    const auto& verts_v = base.path_vertices(pv);

    std::vector<VertexId> suffix(verts_v.begin() + iv, verts_v.end());
    int shared = -1;  // last prefix position whose vertex is on the suffix
    for (int j = 0; j <= iu; ++j) {
        if (std::find(suffix.begin(), suffix.end(), verts_u[static_cast<std::size_t>(j)]) != suffix.end()) {
            shared = j;
        }
    }

    RealizedJump result;
    if (shared < 0) {
        result.walk.assign(arcs_u.begin(), arcs_u.begin() + iu);
        result.walk.insert(result.walk.end(), pair.representative.begin(), pair.representative.end());
        result.walk.insert(result.walk.end(), arcs_v.begin() + iv, arcs_v.end());
        return result;
    }
    VertexId w = verts_u[static_cast<std::size_t>(shared)];
    auto w_on_v = static_cast<int>(std::find(suffix.begin(), suffix.end(), w) - suffix.begin()) + iv;
    result.is_cycle = true;
    result.walk.assign(arcs_u.begin() + shared, arcs_u.begin() + iu);
    result.walk.insert(result.walk.end(), pair.representative.begin(), pair.representative.end());
    result.walk.insert(result.walk.end(), arcs_v.begin() + iv, arcs_v.begin() + w_on_v);
    return result;
}

const Rational& Potential::at(VertexId v) const
{
    const auto& value = phi.at(static_cast<std::size_t>(v));
    if (!value) {
        throw std::logic_error("potential undefined at a vertex unreachable from the source");
    }
    return *value;
}

Rational arc_length(const FlowNetwork& net, const Allocation& x, ArcId id)
{
    int index = net.player_index_of_arc(id);
    return index < 0 ? Rational(0) : x.at(static_cast<std::size_t>(index));
}

Potential potential(const FlowNetwork& net, const Allocation& x)
{
    if (x.size() != net.player_count()) {
        throw std::invalid_argument("allocation size does not match the player count");
    }
    for (const auto& value : x) {
        if (sgn(value) < 0) {
            throw std::invalid_argument("potential requires a nonnegative allocation");
        }
    }
    const std::size_t n = net.vertex_count();
    Potential result;
    result.phi.assign(n, std::nullopt);
    std::vector<bool> done(n, false);
    result.phi[static_cast<std::size_t>(net.source())] = Rational(0);
    for (;;) {
        std::optional<std::size_t> pick;
        for (std::size_t v = 0; v < n; ++v) {
            if (!done[v] && result.phi[v] && (!pick || *result.phi[v] < *result.phi[*pick])) {
                pick = v;
            }
        }
        if (!pick) {
            break;
        }
        done[*pick] = true;
        for (ArcId id : net.out_arcs(static_cast<VertexId>(*pick))) {
            auto head = static_cast<std::size_t>(net.arc(id).head);
            Rational candidate = *result.phi[*pick] + arc_length(net, x, id);
            if (!result.phi[head] || candidate < *result.phi[head]) {
                result.phi[head] = candidate;
            }
        }
    }
    return result;
}

}  // namespace flowgame
