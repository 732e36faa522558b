#include "support.hpp"

#include "flowgame/coresolve.hpp"
#include "flowgame/pathstruct.hpp"
#include "flowgame/reforacle.hpp"

#include <doctest.h>

#include <algorithm>

using namespace flowgame;

namespace {

Path concat(const Decomposition& d)
{
    Path all;
    for (const auto& piece : d.pieces) {
        all.insert(all.end(), piece.arcs.begin(), piece.arcs.end());
    }
    return all;
}

// A cycle listed from another starting arc.
bool same_cycle(const Path& a, const Path& b)
{
    if (a.size() != b.size()) {
        return false;
    }
    for (std::size_t shift = 0; shift < a.size(); ++shift) {
        bool equal = true;
        for (std::size_t i = 0; i < a.size() && equal; ++i) {
            equal = a[(i + shift) % a.size()] == b[i];
        }
        if (equal) {
            return true;
        }
    }
    return false;
}

}  // namespace

TEST_CASE("base systems of golden instances")
{
    FlowNetwork d = testing::golden("D");
    BaseSystem base(d);
    CHECK(base.sigma_n() == 2);
    CHECK(base.system().paths == std::vector<Path>{{0, 1}, {2, 3}});
    CHECK_FALSE(base.is_base_arc(4));
    CHECK(base.covers(1));

    BaseSystem a(testing::golden("A"));
    CHECK(a.sigma_n() == 2);
    BaseSystem c(testing::golden("C"));
    CHECK(c.system().paths == std::vector<Path>{{0}});
}

TEST_CASE("jump pairs")
{
    FlowNetwork d = testing::golden("D");
    BaseSystem base(d);
    auto pairs = find_jump_pairs(d, base);
    REQUIRE(pairs.size() == 1);
    CHECK(d.vertex_name(pairs[0].u) == "a");
    CHECK(d.vertex_name(pairs[0].v) == "b");
    CHECK(pairs[0].representative == Path{4});
    CHECK(pairs[0].jump_arcs == std::vector<ArcId>{4});

    FlowNetwork b = testing::golden("B");
    CHECK(find_jump_pairs(b, BaseSystem(b)).empty());
    FlowNetwork a = testing::golden("A");
    CHECK(find_jump_pairs(a, BaseSystem(a)).empty());
}

TEST_CASE("representative has fewest arcs")
{
    // Two off-base routes from a to b: one through x, one through x and y.
    FlowNetwork net = parse_network("vertices 6 s a b t x y\nsource s\nsink t\n"
                                    "arc s a private 1\narc a t private 2\narc s b private 3\narc b t private 4\n"
                                    "arc a x public\narc x y public\narc y b public\narc x b public\n");
    BaseSystem base(net);
    auto pairs = find_jump_pairs(net, base);
    REQUIRE(pairs.size() == 1);
    CHECK(pairs[0].representative == Path{4, 7});
    CHECK(pairs[0].jump_arcs == std::vector<ArcId>{4, 5, 6, 7});
}

TEST_CASE("decomposition of golden walks")
{
    FlowNetwork d = testing::golden("D");
    BaseSystem base(d);
    Decomposition p3 = decompose(d, base, Path{0, 4, 3});
    REQUIRE(p3.pieces.size() == 3);
    CHECK(p3.pieces[0].arcs == Path{0});
    CHECK(p3.pieces[1].is_jump);
    CHECK(p3.pieces[1].arcs == Path{4});
    CHECK(p3.pieces[2].arcs == Path{3});
    CHECK(p3.jump_pairs == std::vector<std::pair<VertexId, VertexId>>{{1, 2}});

    Decomposition p1 = decompose(d, base, Path{0, 1});
    REQUIRE(p1.pieces.size() == 1);
    CHECK(p1.jump_pairs.empty());

    FlowNetwork b = testing::golden("B");
    CHECK(decompose(b, BaseSystem(b), Path{0}).pieces.size() == 1);

    CHECK_THROWS_AS(decompose(d, base, Path{0, 3}), std::invalid_argument);
    CHECK_THROWS_AS(decompose(d, base, Path{}), std::invalid_argument);
}

TEST_CASE("realizing jumps")
{
    FlowNetwork d = testing::golden("D");
    BaseSystem base(d);
    RealizedJump w = realize_jump(d, base, find_jump_pairs(d, base).at(0));
    CHECK_FALSE(w.is_cycle);
    CHECK(w.walk == Path{0, 4, 3});
}

TEST_CASE("a jump closed by the base realizes as a cycle")
{
    FlowNetwork net = load_network(std::string(FLOWGAME_TEST_DATA) + "/jump_cycle.fg");
    BaseSystem base(net);
    auto pairs = find_jump_pairs(net, base);
    auto it = std::find_if(pairs.begin(), pairs.end(), [](const JumpPair& p) { return p.u == 3 && p.v == 2; });
    REQUIRE(it != pairs.end());
    RealizedJump w = realize_jump(net, base, *it);
    CHECK(w.is_cycle);
    CHECK(walk_vertices(net, w.walk) == std::vector<VertexId>{3, 2, 1, 3});
    Decomposition dec = decompose(net, base, w.walk);
    CHECK(dec.is_cycle);
    CHECK(dec.jump_pairs == std::vector<std::pair<VertexId, VertexId>>{{3, 2}});
}

TEST_CASE("potentials")
{
    FlowNetwork d = testing::golden("D");
    Potential p = potential(d, testing::alloc({"1", "0", "0", "1"}));
    CHECK(p.at(0) == 0);
    CHECK(p.at(1) == 1);
    CHECK(p.at(2) == 0);
    CHECK(p.at(3) == 1);

    // Through a and then the public arc, b is reached at no cost; so is t.
    Potential q = potential(d, testing::alloc({"0", "1", "1", "0"}));
    CHECK(q.at(1) == 0);
    CHECK(q.at(2) == 0);
    CHECK(q.at(3) == 0);

    Potential zero = potential(d, testing::alloc({"0", "0", "0", "0"}));
    for (VertexId v = 0; v < 4; ++v) {
        CHECK(zero.at(v) == 0);
    }
}

TEST_CASE("property: decompositions round-trip and jump identity holds on core vertices")
{
    for (const auto& net : testing::corpus(40, 101)) {
        CAPTURE(serialize_network(net));
        BaseSystem base(net);
        auto pairs = find_jump_pairs(net, base);
        auto is_pair = [&](std::pair<VertexId, VertexId> uv) {
            return std::any_of(pairs.begin(), pairs.end(), [&](const JumpPair& p) { return p.u == uv.first && p.v == uv.second; });
        };
        auto paths = enumerate_st_paths(net, 10000);
        auto cycles = enumerate_cycles(net, 10000);
        ApproxCore core = approximate_core(net, 1000);
        for (const auto& walks : {paths, cycles}) {
            for (const Path& w : walks) {
                Decomposition dec = decompose(net, base, w);
                if (dec.is_cycle) {
                    CHECK(same_cycle(concat(dec), w));
                } else {
                    CHECK(concat(dec) == w);
                }
                for (const auto& uv : dec.jump_pairs) {
                    CHECK(is_pair(uv));
                }
                for (const auto& x : core.vertices) {
                    Potential phi = potential(net, x);
                    Rational lhs = 0;
                    for (ArcId id : w) {
                        int i = net.player_index_of_arc(id);
                        if (i >= 0) {
                            lhs += x[static_cast<std::size_t>(i)];
                        }
                    }
                    Rational rhs = dec.is_cycle ? 0 : 1;
                    for (const auto& uv : dec.jump_pairs) {
                        rhs += phi.at(uv.first) - phi.at(uv.second);
                    }
                    CHECK(lhs == rhs);
                }
            }
        }
        for (const auto& pair : pairs) {
            RealizedJump w = realize_jump(net, base, pair);
            Decomposition dec = decompose(net, base, w.walk);
            CHECK(dec.is_cycle == w.is_cycle);
            CHECK(dec.jump_pairs == std::vector<std::pair<VertexId, VertexId>>{{pair.u, pair.v}});
        }
    }
}
