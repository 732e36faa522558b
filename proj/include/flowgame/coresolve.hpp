#pragma once

#include "flowgame/flowcore.hpp"
#include "flowgame/lpexact.hpp"
#include "flowgame/netmodel.hpp"
#include "flowgame/pathstruct.hpp"
#include "flowgame/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace flowgame {

struct GameSigmas
{
    int sigma_n = 0;  // paths disjoint on the private arcs
    int sigma_e = 0;  // arc-disjoint paths, equal to gamma(N)

    Rational factor() const { return Rational(sigma_e) / sigma_n; }  // auxiliary -> original
};

GameSigmas game_sigmas(const FlowNetwork& net);

/// sigma_E / sigma_N - 1.
Rational epsilon_star(const FlowNetwork& net);

enum class Scale
{
    Original,
    Auxiliary,
};

Allocation scale_allocation(const GameSigmas& sigmas, const Allocation& x, Scale to);

struct ShortestPath
{
    Rational length;
    Path path;
};

/// Shortest s-t path with private arcs weighted by x and public arcs free.
ShortestPath shortest_st_path(const FlowNetwork& net, const Allocation& x);

struct Membership
{
    bool in_core = false;
    std::optional<Path> violation;  // an s-t path with x-length below one
};

/// Auxiliary-core membership of an allocation with x >= 0 and x(N) = sigma_N.
/// Throws std::invalid_argument when x is not such an allocation.
Membership auxiliary_core_membership(const FlowNetwork& net, const Allocation& x);

struct ApproxCore
{
    Rational epsilon_star;
    Rational scaling_factor;  // sigma_E / sigma_N
    std::vector<Allocation> vertices;  // auxiliary scale, 0/1 valued
    bool partial = false;
};

/// Incidence vectors of the minimum s-t cuts constrained to the private arcs,
/// each checked against auxiliary_core_membership.
ApproxCore approximate_core(const FlowNetwork& net, std::size_t max_vertices);

struct PotentialCheck
{
    enum class Failure
    {
        None,
        PrivateArc,   // x(e) + phi(u) - phi(v) < 0
        PublicArc,    // phi(u) - phi(v) < 0
        SourceLevel,  // phi(s) != 0
        SinkLevel,    // phi(t) != 1
    };
    Failure failure = Failure::None;
    ArcId arc = -1;
    Potential phi;

    bool holds() const { return failure == Failure::None; }
};

/// Computes the shortest-path potential of x and checks the potential rows.
PotentialCheck potential_characterization_check(const FlowNetwork& net, const Allocation& x);

std::string describe(PotentialCheck::Failure failure);

}  // namespace flowgame
