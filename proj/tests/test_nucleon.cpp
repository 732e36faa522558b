#include "support.hpp"

#include "flowgame/nucleon.hpp"
#include "flowgame/reforacle.hpp"

#include <doctest.h>

using namespace flowgame;

namespace {

std::vector<Rational> epsilons(const NucleonOutcome& o)
{
    std::vector<Rational> e;
    for (const auto& r : o.rounds) {
        e.push_back(r.epsilon);
    }
    return e;
}

}  // namespace

TEST_CASE("round one is the auxiliary core")
{
    FlowNetwork d = testing::golden("D");
    NucleonEngine engine(d);
    CHECK(engine.round() == 1);
    CHECK(engine.epsilon() == 0);
    CHECK(engine.fixed_players().empty());
    CHECK(engine.fixed_pairs().empty());
    CHECK(engine.hull().directions.size() == 2);
    CHECK(engine.auxiliary_arcs() == ArcMask{true, true, true, true, false});
    for (std::size_t i = 0; i < 4; ++i) {
        std::vector<Rational> f(engine.pool().variable_count());
        f[engine.x_var(static_cast<int>(i))] = 1;
        Range r = engine.range(f);
        CHECK(r.min == 0);
        CHECK(r.max == 1);
    }
    std::vector<Rational> diff(engine.pool().variable_count());
    diff[engine.phi_var(1)] = 1;
    diff[engine.phi_var(2)] = -1;
    Range r = engine.range(diff);
    CHECK(r.min == 0);
    CHECK(r.max == 1);

    NucleonEngine b(testing::golden("B"));
    CHECK(b.fixed_players() == std::vector<PlayerId>{1, 2});
    CHECK(b.hull().is_point());
    CHECK(b.finished());
    CHECK_FALSE(b.solve_round());

    NucleonEngine a(testing::golden("A"));
    CHECK(a.fixed_players() == std::vector<PlayerId>{1, 2});
    CHECK(a.jump_pairs().empty());
    CHECK(a.hull().point == testing::alloc({"1", "1"}));
}

TEST_CASE("separation oracle on the diamond")
{
    FlowNetwork d = testing::golden("D");
    NucleonEngine engine(d);
    OracleResult r = engine.separation_oracle(testing::alloc({"1/2", "1/2", "1/2", "1/2"}));
    REQUIRE(r.best_jump);
    CHECK(r.best_jump->members == Coalition({1, 4}));
    CHECK(r.best_jump->excess == 0);
    CHECK(r.best_jump->value == 1);
    REQUIRE(r.best_removed);
    CHECK(r.best_removed->excess == Rational(1, 2));
    REQUIRE(r.minimum());
    CHECK(*r.minimum() == 0);

    bool found = false;
    for (const auto& c : r.candidates) {
        if (c.members == Coalition({1, 3, 4})) {
            found = true;
            CHECK(c.kind == CriticalCoalition::Kind::RemovedArc);
            CHECK(c.excess == Rational(1, 2));
            CHECK(c.tau == 1);
        }
    }
    CHECK(found);

    NucleonEngine b(testing::golden("B"));
    OracleResult none = b.separation_oracle(testing::alloc({"1", "1"}));
    CHECK_FALSE(none.minimum());
    CHECK(none.candidates.empty());
}

TEST_CASE("golden nucleons")
{
    NucleonOutcome b = nucleon(testing::golden("B"));
    CHECK(b.allocation == testing::alloc({"1", "1"}));
    CHECK(b.rounds.size() == 1);
    CHECK(b.rounds[0].epsilon == 0);
    CHECK(format_round(b.rounds[0]) == "round k=1 epsilon=0 fixed_arcs=2 fixed_jumps=0 cuts=0");

    NucleonOutcome a = nucleon(testing::golden("A"));
    CHECK(a.singleton);
    CHECK(a.allocation == testing::alloc({"1/2", "1/2"}));
    CHECK(a.auxiliary == testing::alloc({"1", "1"}));
    CHECK(a.rounds.size() == 1);

    NucleonOutcome c = nucleon(testing::golden("C"));
    CHECK(c.core_flag);
    CHECK(c.core_vertices == std::vector<std::vector<Rational>>{testing::alloc({"1"})});

    NucleonOptions opts;
    opts.spot_samples = 50;
    NucleonOutcome d = nucleon(testing::golden("D"), opts);
    CHECK(d.singleton);
    CHECK(d.allocation == testing::alloc({"2/3", "1/3", "1/3", "2/3"}));
    CHECK(epsilons(d) == std::vector<Rational>{0, Rational(1, 3)});
    CHECK(d.rounds[1].fixed_arcs == 4);
    CHECK(d.rounds[1].fixed_jumps == 1);
    CHECK(d.spot.excess_failures == 0);
    CHECK(d.spot.potential_failures == 0);
}

TEST_CASE("regression: an arc shared by a fixed and an unfixed jump")
{
    FlowNetwork net = testing::generated(244, 5, 9, 5);
    CAPTURE(serialize_network(net));
    NucleonOptions opts;
    opts.spot_samples = 200;
    NucleonOutcome o = nucleon(net, opts);
    BruteNucleon b = brute_nucleon(net);
    CHECK(o.rounds.size() > 1);
    CHECK(o.allocation == b.allocation);
    CHECK(epsilons(o) == b.epsilons);
    CHECK(o.spot.excess_failures == 0);
}

TEST_CASE("property: engine matches the brute-force recursion")
{
    int multi_round = 0;
    int checked = 0;
    for (std::uint64_t seed = 1; seed <= 60; ++seed) {
        FlowNetwork net = testing::generated(seed, 5 + static_cast<int>(seed % 4), 5 + static_cast<int>(seed % 5),
                                             1 + static_cast<int>(seed % 4));
        if (game_sigmas(net).sigma_n < 2) {
            continue;
        }
        CAPTURE(serialize_network(net));
        NucleonOptions opts;
        opts.spot_samples = 40;
        opts.seed = seed;
        NucleonOutcome o = nucleon(net, opts);
        BruteNucleon b = brute_nucleon(net);
        ++checked;
        CHECK(o.singleton);
        CHECK(o.allocation == b.allocation);
        CHECK(epsilons(o) == b.epsilons);
        CHECK(o.spot.excess_failures == 0);
        CHECK(o.spot.potential_failures == 0);
        CHECK(o.rounds.size() <= net.player_count());
        for (std::size_t k = 1; k < o.rounds.size(); ++k) {
            CHECK(o.rounds[k - 1].epsilon < o.rounds[k].epsilon);
            CHECK(o.rounds[k - 1].fixed_arcs <= o.rounds[k].fixed_arcs);
            CHECK(o.rounds[k - 1].fixed_jumps <= o.rounds[k].fixed_jumps);
        }
        multi_round += o.rounds.size() > 1 ? 1 : 0;
    }
    CHECK(checked >= 30);
    CHECK(multi_round >= 10);
}

TEST_CASE("property: fixed coalitions stay fixed on the next face")
{
    for (std::uint64_t seed = 1; seed <= 25; ++seed) {
        FlowNetwork net = testing::generated(seed, 6, 7, 3);
        if (game_sigmas(net).sigma_n < 2) {
            continue;
        }
        CAPTURE(serialize_network(net));
        NucleonEngine engine(net);
        while (!engine.finished()) {
            AffineHull before = engine.hull();
            std::vector<std::vector<Rational>> fixed;
            for (PlayerId p : net.players()) {
                std::vector<Rational> f(net.player_count());
                f[static_cast<std::size_t>(net.player_index(p))] = 1;
                if (before.constant_on(f)) {
                    fixed.push_back(f);
                }
            }
            if (!engine.solve_round()) {
                break;
            }
            for (const auto& f : fixed) {
                CHECK(engine.hull().constant_on(f));
            }
        }
    }
}
