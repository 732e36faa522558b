#include "support.hpp"

#include "flowgame/flowcore.hpp"
#include "flowgame/reforacle.hpp"

#include <doctest.h>

#include <set>

using namespace flowgame;

namespace {

bool is_st_path(const FlowNetwork& net, const Path& p)
{
    if (p.empty() || net.arc(p.front()).tail != net.source() || net.arc(p.back()).head != net.sink()) {
        return false;
    }
    std::set<VertexId> seen{net.source()};
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (i > 0 && net.arc(p[i - 1]).head != net.arc(p[i]).tail) {
            return false;
        }
        if (!seen.insert(net.arc(p[i]).head).second) {
            return false;
        }
    }
    return true;
}

WeightedGraph weighted(const FlowNetwork& net, const std::vector<Rational>& x, const ArcMask& keep)
{
    WeightedGraph g;
    g.vertex_count = net.vertex_count();
    g.source = net.source();
    g.sink = net.sink();
    for (const auto& a : net.arcs()) {
        if (keep[static_cast<std::size_t>(a.id)]) {
            int i = net.player_index_of_arc(a.id);
            g.arcs.push_back({a.tail, a.head, i >= 0 ? x[static_cast<std::size_t>(i)] : Rational(0)});
        }
    }
    return g;
}

}  // namespace

TEST_CASE("coalition values on golden instances")
{
    FlowNetwork a = testing::golden("A");
    FlowNetwork b = testing::golden("B");
    FlowNetwork d = testing::golden("D");
    CHECK(coalition_value(b, Coalition({1})).value == 1);
    CHECK(coalition_value(b, Coalition({1, 2})).value == 2);
    CHECK(coalition_value(a, a.grand_coalition()).value == 1);
    CHECK(coalition_value(d, d.grand_coalition()).value == 2);
    CHECK(coalition_value(d, Coalition({1, 4})).value == 1);
    CHECK(coalition_value(d, Coalition({1, 3})).value == 0);
    CHECK(coalition_value(d, Coalition{}).value == 0);

    CoalitionValue v = coalition_value(d, Coalition({1, 4}));
    REQUIRE(v.paths.size() == 1);
    CHECK(v.paths[0] == Path{0, 4, 3});
}

TEST_CASE("partially disjoint paths and constrained cuts")
{
    FlowNetwork a = testing::golden("A");
    PathSystem on_n = max_partially_disjoint(a, a.private_mask());
    CHECK(on_n.size() == 2);
    CHECK(on_n.paths[0] == Path{0, 1});
    CHECK(on_n.paths[1] == Path{0, 2});
    CHECK(sigma(a, a.full_mask()) == 1);
    CHECK(min_constrained_cut(a, a.private_mask()).arcs == std::vector<ArcId>{1, 2});

    FlowNetwork b = testing::golden("B");
    CHECK(min_constrained_cut(b, b.private_mask()).arcs == std::vector<ArcId>{0, 1});

    FlowNetwork d = testing::golden("D");
    CHECK(sigma(d, d.private_mask()) == 2);
    ConstrainedCut cut = min_constrained_cut(d, d.private_mask());
    CHECK(cut.size() == 2);

    CutEnumeration cuts = enumerate_min_constrained_cuts(d, d.private_mask(), 100);
    CHECK_FALSE(cuts.partial);
    std::vector<std::vector<ArcId>> found;
    for (const auto& c : cuts.cuts) {
        found.push_back(c.arcs);
    }
    CHECK(found == std::vector<std::vector<ArcId>>{{0, 2}, {0, 3}, {1, 3}});
    CHECK(enumerate_min_constrained_cuts(d, d.private_mask(), 2).partial);
    CHECK(enumerate_min_constrained_cuts(b, b.private_mask(), 10).cuts.size() == 1);
    CHECK(enumerate_min_constrained_cuts(a, a.private_mask(), 10).cuts.size() == 1);
}

TEST_CASE("unbounded sigma is an error with a witness")
{
    FlowNetwork net = parse_network("vertices 2 s t\nsource s\nsink t\narc s t private 1\narc s t public\n");
    try {
        sigma(net, net.private_mask());
        FAIL("expected unbounded sigma");
    } catch (const UnboundedSigmaError& e) {
        CHECK(e.witness() == Path{1});
    }
}

TEST_CASE("min-cost disjoint paths")
{
    FlowNetwork d = testing::golden("D");
    ArcMask no_jump = d.full_mask();
    no_jump[4] = false;
    auto two = min_cost_disjoint_paths(weighted(d, testing::alloc({"1", "0", "0", "1"}), no_jump), 2);
    REQUIRE(two);
    CHECK(two->weight == 2);
    CHECK(two->paths.size() == 2);

    auto zero = min_cost_disjoint_paths(weighted(d, testing::alloc({"1", "0", "0", "1"}), d.full_mask()), 0);
    REQUIRE(zero);
    CHECK(zero->weight == 0);
    CHECK(zero->paths.empty());

    FlowNetwork b = testing::golden("B");
    auto one = min_cost_disjoint_paths(weighted(b, testing::alloc({"1", "3"}), b.full_mask()), 1);
    REQUIRE(one);
    CHECK(one->weight == 1);
    CHECK(one->used == std::vector<bool>{true, false});
    CHECK_FALSE(min_cost_disjoint_paths(weighted(b, testing::alloc({"1", "3"}), b.full_mask()), 3));
}

TEST_CASE("min-cost paths with one negative artificial arc")
{
    // D with the jump replaced by an artificial a-b arc of weight -3. Two
    // disjoint paths cannot both use it, so the pair avoids it.
    FlowNetwork d = testing::golden("D");
    ArcMask no_jump = d.full_mask();
    no_jump[4] = false;
    WeightedGraph g = weighted(d, testing::alloc({"1/2", "1/2", "1/2", "1/2"}), no_jump);
    g.arcs.push_back({1, 2, Rational(-3)});
    auto one = min_cost_disjoint_paths(g, 1);
    REQUIRE(one);
    CHECK(one->weight == -2);
    CHECK(one->used.back());
    auto two = min_cost_disjoint_paths(g, 2);
    REQUIRE(two);
    CHECK(two->weight == 2);
    CHECK_FALSE(two->used.back());
}

TEST_CASE("property: duality, monotonicity and witnesses on generated instances")
{
    for (const auto& net : testing::corpus(60)) {
        CAPTURE(serialize_network(net));
        const int sn = sigma(net, net.private_mask());
        const int se = sigma(net, net.full_mask());
        CHECK(sn >= se);
        CHECK(min_constrained_cut(net, net.private_mask()).size() == sn);
        CHECK(min_constrained_cut(net, net.full_mask()).size() == se);
        if (net.arc_count() <= max_arcs_for_brute_sigma) {
            CHECK(brute_sigma(net, net.private_mask()) == sn);
            CHECK(brute_sigma(net, net.full_mask()) == se);
        }
        PathSystem sys = max_partially_disjoint(net, net.private_mask());
        std::set<ArcId> used_private;
        for (const Path& p : sys.paths) {
            CHECK(is_st_path(net, p));
            for (ArcId id : p) {
                if (net.arc(id).is_private()) {
                    CHECK(used_private.insert(id).second);
                }
            }
        }
        CHECK(coalition_value(net, Coalition{}).value == 0);
        CHECK(coalition_value(net, net.grand_coalition()).value == se);

        // Monotone under adding one player.
        const auto& players = net.players();
        for (std::size_t i = 0; i + 1 < players.size(); ++i) {
            Coalition small(std::vector<PlayerId>(players.begin(), players.begin() + static_cast<long>(i)));
            Coalition big(std::vector<PlayerId>(players.begin(), players.begin() + static_cast<long>(i) + 1));
            CHECK(coalition_value(net, small).value <= coalition_value(net, big).value);
        }

        auto zero = min_cost_disjoint_paths(weighted(net, std::vector<Rational>(net.player_count()), net.full_mask()), se);
        REQUIRE(zero);
        CHECK(zero->weight == 0);
    }
}
