#pragma once

#include "flowgame/flowcore.hpp"
#include "flowgame/netmodel.hpp"
#include "flowgame/rational.hpp"

#include <compare>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

namespace flowgame {

/// The fixed reference system: a maximum family of s-t paths disjoint on the
/// private arcs, chosen by the canonical flow peel.
class BaseSystem
{
  public:
    explicit BaseSystem(const FlowNetwork& net);

    const PathSystem& system() const { return system_; }
    int sigma_n() const { return system_.size(); }

    bool covers(VertexId v) const { return !positions_.at(static_cast<std::size_t>(v)).empty(); }
    /// (path index, position in that path's vertex sequence), ascending.
    const std::vector<std::pair<int, int>>& positions(VertexId v) const
    {
        return positions_.at(static_cast<std::size_t>(v));
    }
    bool is_base_arc(ArcId id) const { return base_arc_.at(static_cast<std::size_t>(id)); }
    const std::vector<VertexId>& path_vertices(int index) const
    {
        return vertices_.at(static_cast<std::size_t>(index));
    }

  private:
    PathSystem system_;
    std::vector<std::vector<VertexId>> vertices_;
    std::vector<std::vector<std::pair<int, int>>> positions_;
    std::vector<bool> base_arc_;
};

struct JumpPair
{
    VertexId u = -1;
    VertexId v = -1;
    Path representative;          // fewest arcs, then smallest arc ids
    std::vector<ArcId> jump_arcs;  // every arc on some u-v jump, ascending

    bool operator==(const JumpPair& other) const { return u == other.u && v == other.v; }
    auto operator<=>(const JumpPair& other) const { return std::pair(u, v) <=> std::pair(other.u, other.v); }
};

/// All jump pairs, ordered by (u, v).
std::vector<JumpPair> find_jump_pairs(const FlowNetwork& net, const BaseSystem& base);

struct Piece
{
    Path arcs;
    bool is_jump = false;
    /// Endpoints of a jump piece. A piece leaving and re-entering the base at
    /// the same vertex has u == v and contributes no pair.
    std::optional<std::pair<VertexId, VertexId>> pair;
};

struct Decomposition
{
    std::vector<Piece> pieces;
    std::vector<std::pair<VertexId, VertexId>> jump_pairs;  // in walk order, repeats kept
    bool is_cycle = false;
};

/// Splits an s-t path or a simple cycle into base subpaths and jumps. A cycle
/// is rotated to start at its first base vertex. Throws std::invalid_argument
/// on anything else.
Decomposition decompose(const FlowNetwork& net, const BaseSystem& base, const Path& walk);

struct RealizedJump
{
    Path walk;
    bool is_cycle = false;
};

/// An s-t path or a cycle whose only jump is the pair's representative.
RealizedJump realize_jump(const FlowNetwork& net, const BaseSystem& base, const JumpPair& pair);

/// Per-player payoffs indexed like FlowNetwork::players().
using Allocation = std::vector<Rational>;

/// Shortest-path distances from s with private arcs weighted by the
/// allocation and public arcs weighted zero. Unreachable vertices are empty.
struct Potential
{
    std::vector<std::optional<Rational>> phi;

    const Rational& at(VertexId v) const;
};

Potential potential(const FlowNetwork& net, const Allocation& x);

/// Arc weight used by the potential: x of the owner, or zero.
Rational arc_length(const FlowNetwork& net, const Allocation& x, ArcId id);

}  // namespace flowgame
