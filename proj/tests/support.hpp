#pragma once

#include "flowgame/generator.hpp"
#include "flowgame/netmodel.hpp"
#include "flowgame/rational.hpp"

#include <initializer_list>
#include <string>
#include <vector>

namespace testing {

inline flowgame::FlowNetwork golden(const std::string& name)
{
    return flowgame::load_network(std::string(FLOWGAME_TEST_DATA) + "/instance" + name + ".fg");
}

// Allocation from literals such as {"1/2", "0", "1"}.
inline std::vector<flowgame::Rational> alloc(std::initializer_list<const char*> values)
{
    std::vector<flowgame::Rational> x;
    for (const char* v : values) {
        x.push_back(flowgame::parse_rational(v));
    }
    return x;
}

inline flowgame::FlowNetwork generated(std::uint64_t seed, int vertices, int private_arcs, int public_arcs)
{
    flowgame::GeneratorParams p;
    p.seed = seed;
    p.vertices = vertices;
    p.private_arcs = private_arcs;
    p.public_arcs = public_arcs;
    return flowgame::generate_instance(p).network;
}

// A small corpus with mixed shapes, deterministic.
inline std::vector<flowgame::FlowNetwork> corpus(int count, std::uint64_t first_seed = 1)
{
    std::vector<flowgame::FlowNetwork> nets;
    for (int i = 0; i < count; ++i) {
        std::uint64_t s = first_seed + static_cast<std::uint64_t>(i);
        nets.push_back(generated(s, 4 + static_cast<int>(s % 4), 4 + static_cast<int>(s % 5),
                                 1 + static_cast<int>(s % 4)));
    }
    return nets;
}

}  // namespace testing
