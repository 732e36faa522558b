#pragma once

#include "flowgame/netmodel.hpp"

#include <cstdint>
#include <string>

namespace flowgame {

struct GeneratorParams
{
    std::uint64_t seed = 1;
    int vertices = 5;
    int private_arcs = 4;
    int public_arcs = 2;
};

struct GeneratedInstance
{
    FlowNetwork network;
    GeneratorParams params;
    int rejections = 0;
};

/// A random instance that validates cleanly as drawn: a spine through all
/// vertices in a random order, extra arcs mostly forward, and a shuffled
/// private/public split. Deterministic per parameter set. Throws
/// std::invalid_argument for out-of-range parameters or when no sample is
/// accepted within the attempt budget.
GeneratedInstance generate_instance(const GeneratorParams& params);

/// Same as generate_instance on `vertices - 1` vertices and one private arc
/// fewer, with a private arc from a fresh source into the old one. Every
/// s-t path uses that arc, so sigma_N = 1.
GeneratedInstance generate_bridged_instance(const GeneratorParams& params);

/// Instance text preceded by a comment recording the parameters.
std::string emit_instance(const GeneratedInstance& instance);

}  // namespace flowgame
