#pragma once

#include "flowgame/netmodel.hpp"
#include "flowgame/rational.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

namespace flowgame {

/// A family of s-t paths that pairwise share no arc of `disjoint_on`.
struct PathSystem
{
    std::vector<Path> paths;
    ArcMask disjoint_on;

    int size() const { return static_cast<int>(paths.size()); }
};

/// An s-t cut all of whose arcs lie in the constraint set. Arc ids ascending.
struct ConstrainedCut
{
    std::vector<ArcId> arcs;

    int size() const { return static_cast<int>(arcs.size()); }
    auto operator<=>(const ConstrainedCut&) const = default;
};

/// Raised when some s-t path avoids the constraint set, so no cut constrained
/// to it exists and the number of partially disjoint paths is unbounded.
class UnboundedSigmaError : public std::runtime_error
{
  public:
    explicit UnboundedSigmaError(Path witness);
    const Path& witness() const { return witness_; }

  private:
    Path witness_;
};

struct CoalitionValue
{
    int value = 0;
    std::vector<Path> paths;  // `value` arc-disjoint s-t paths in D_S
};

/// gamma(S): maximum number of arc-disjoint s-t paths using the coalition's
/// private arcs and all public arcs.
CoalitionValue coalition_value(const FlowNetwork& net, const Coalition& coalition);

/// Same as coalition_value(...).value for an arc subset.
int max_flow_value(const FlowNetwork& net, const ArcMask& usable);

/// Maximum set of s-t paths pairwise disjoint on `constraint`. Arcs in the
/// constraint set have capacity one, the rest are uncapacitated; circulations
/// are cancelled before paths are peeled in increasing arc-id order.
PathSystem max_partially_disjoint(const FlowNetwork& net, const ArcMask& constraint);

/// sigma_F, the size of max_partially_disjoint(net, F).
int sigma(const FlowNetwork& net, const ArcMask& constraint);

/// A minimum s-t cut constrained to `constraint`; its size equals sigma_F.
ConstrainedCut min_constrained_cut(const FlowNetwork& net, const ArcMask& constraint);

struct CutEnumeration
{
    std::vector<ConstrainedCut> cuts;  // ascending lexicographic order
    bool partial = false;              // true when truncated at the cap
};

/// Every minimum s-t cut constrained to `constraint` (up to `cap` of them),
/// enumerated as closed vertex sets of the residual graph of a maximum flow.
CutEnumeration enumerate_min_constrained_cuts(const FlowNetwork& net, const ArcMask& constraint, std::size_t cap);

/// Arcs of an explicit weighted digraph for min-cost path problems.
struct WeightedArc
{
    VertexId tail = -1;
    VertexId head = -1;
    Rational weight;
};

struct WeightedGraph
{
    std::size_t vertex_count = 0;
    VertexId source = -1;
    VertexId sink = -1;
    std::vector<WeightedArc> arcs;  // unit capacity each
};

struct MinCostPaths
{
    std::vector<std::vector<int>> paths;   // arc indices into WeightedGraph::arcs
    std::vector<std::vector<int>> cycles;  // only cycles through negative-weight arcs survive
    Rational weight;
    std::vector<bool> used;  // arc indices carrying flow
};

/// Minimum-weight set of `count` arc-disjoint s-t paths. Negative weights are
/// allowed; negative arcs are saturated up front so successive shortest paths
/// run on a residual graph without negative cycles. Returns nullopt when
/// fewer than `count` arc-disjoint paths exist.
std::optional<MinCostPaths> min_cost_disjoint_paths(const WeightedGraph& graph, int count);

/// Splits an integral unit flow given by the set of used arcs into s-t paths
/// and cycles, following the smallest arc index at every step.
void decompose_unit_flow(const WeightedGraph& graph, std::vector<bool> used, std::vector<std::vector<int>>& paths,
                         std::vector<std::vector<int>>& cycles);

}  // namespace flowgame
