#pragma once

#include "flowgame/lpexact.hpp"
#include "flowgame/netmodel.hpp"
#include "flowgame/pathstruct.hpp"
#include "flowgame/rational.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

namespace flowgame {

/// Raised when an exhaustive computation is asked to run above its size limit.
class SizeGuardError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

inline constexpr std::size_t max_players_for_enumeration = 16;
inline constexpr std::size_t max_players_for_brute_nucleon = 10;
inline constexpr std::size_t max_arcs_for_brute_sigma = 12;

/// gamma(S) for every coalition, indexed by bitmask over player positions.
std::vector<int> all_coalition_values(const FlowNetwork& net);

/// max epsilon such that x(S) >= (1 + epsilon) gamma(S) for all S with
/// gamma(S) > 0 and x(N) = gamma(N), x >= 0, as one explicit LP.
Rational brute_epsilon_star(const FlowNetwork& net);

struct ExcessEntry
{
    Coalition coalition;
    std::optional<Rational> excess;  // empty stands for +infinity (gamma(S) = 0)
};

/// Relative excesses of every proper nonempty coalition, non-decreasing,
/// infinite entries last; ties ordered by coalition.
std::vector<ExcessEntry> excess_vector(const FlowNetwork& net, const Allocation& x);

/// Exhaustive maximum number of s-t paths pairwise disjoint on the mask,
/// cross-checked against an exhaustive minimum constrained cut. Throws
/// UnboundedSigmaError if some s-t path avoids the mask and std::logic_error
/// if the two exhaustive values differ.
int brute_sigma(const FlowNetwork& net, const ArcMask& constraint);

/// x(S) >= gamma~(S) for every coalition, with x >= 0 and x(N) = sigma_N.
bool brute_core_membership(const FlowNetwork& net, const Allocation& x);

/// The auxiliary core over allocation variables only: one row per coalition,
/// omitting a row when removing some member leaves the value unchanged (the
/// smaller coalition's row and x >= 0 imply it).
ConstraintPool brute_core_pool(const FlowNetwork& net);

struct BruteNucleon
{
    bool core_flag = false;
    bool singleton = false;
    Allocation allocation;  // original scale
    Allocation auxiliary;
    std::vector<Allocation> core_vertices;  // core_flag only
    ConstraintPool core;                     // core_flag only
    std::vector<Rational> epsilons;          // epsilon_1, epsilon_2, ...
};

/// The sequential LPs over all coalitions on the auxiliary game, with
/// fixedness read from the exact affine hull of each optimal face.
BruteNucleon brute_nucleon(const FlowNetwork& net);

/// Every s-t path with distinct vertices. Throws SizeGuardError past `limit`.
std::vector<Path> enumerate_st_paths(const FlowNetwork& net, std::size_t limit);

/// Every directed simple cycle, each starting at its smallest vertex. Throws
/// SizeGuardError past `limit`.
std::vector<Path> enumerate_cycles(const FlowNetwork& net, std::size_t limit);

}  // namespace flowgame
