#include "support.hpp"

#include "flowgame/coresolve.hpp"
#include "flowgame/nucleon.hpp"
#include "flowgame/reforacle.hpp"

#include <doctest.h>

#include <algorithm>

#include <random>

using namespace flowgame;

TEST_CASE("epsilon star on golden instances")
{
    CHECK(epsilon_star(testing::golden("A")) == Rational(-1, 2));
    CHECK(epsilon_star(testing::golden("B")) == 0);
    CHECK(epsilon_star(testing::golden("C")) == 0);
    CHECK(epsilon_star(testing::golden("D")) == 0);
    GameSigmas a = game_sigmas(testing::golden("A"));
    CHECK(a.sigma_n == 2);
    CHECK(a.sigma_e == 1);
    CHECK(a.factor() == Rational(1, 2));
}

TEST_CASE("scaling between the two games")
{
    GameSigmas a = game_sigmas(testing::golden("A"));
    CHECK(scale_allocation(a, testing::alloc({"1", "1"}), Scale::Original) == testing::alloc({"1/2", "1/2"}));
    CHECK(scale_allocation(a, testing::alloc({"1/2", "1/2"}), Scale::Auxiliary) == testing::alloc({"1", "1"}));
    GameSigmas b = game_sigmas(testing::golden("B"));
    CHECK(scale_allocation(b, testing::alloc({"1", "1"}), Scale::Original) == testing::alloc({"1", "1"}));

    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> num(0, 50);
    std::uniform_int_distribution<int> den(1, 13);
    for (int i = 0; i < 50; ++i) {
        std::vector<Rational> x(2);
        for (auto& v : x) {
            v = Rational(num(rng), den(rng));
            v.canonicalize();
        }
        CHECK(scale_allocation(a, scale_allocation(a, x, Scale::Original), Scale::Auxiliary) == x);
    }
}

TEST_CASE("membership by shortest paths")
{
    FlowNetwork d = testing::golden("D");
    Membership half = auxiliary_core_membership(d, testing::alloc({"1/2", "1/2", "1/2", "1/2"}));
    CHECK(half.in_core);
    CHECK_FALSE(half.violation);
    CHECK(shortest_st_path(d, testing::alloc({"1/2", "1/2", "1/2", "1/2"})).length == 1);

    Membership off = auxiliary_core_membership(d, testing::alloc({"0", "1", "1", "0"}));
    CHECK_FALSE(off.in_core);
    REQUIRE(off.violation);
    CHECK(*off.violation == Path{0, 4, 3});

    CHECK(auxiliary_core_membership(testing::golden("B"), testing::alloc({"1", "1"})).in_core);
    CHECK_THROWS_AS(auxiliary_core_membership(d, testing::alloc({"1", "1", "1", "1"})), std::invalid_argument);
    CHECK_THROWS_AS(auxiliary_core_membership(d, testing::alloc({"3", "-1", "0", "0"})), std::invalid_argument);
}

TEST_CASE("approximate core vertices")
{
    ApproxCore d = approximate_core(testing::golden("D"), 100);
    CHECK(d.epsilon_star == 0);
    CHECK(d.scaling_factor == 1);
    CHECK_FALSE(d.partial);
    CHECK(d.vertices.size() == 3);
    auto has = [&](const std::vector<Rational>& v) { return std::find(d.vertices.begin(), d.vertices.end(), v) != d.vertices.end(); };
    CHECK(has(testing::alloc({"1", "0", "1", "0"})));
    CHECK(has(testing::alloc({"0", "1", "0", "1"})));
    CHECK(has(testing::alloc({"1", "0", "0", "1"})));

    ApproxCore a = approximate_core(testing::golden("A"), 100);
    CHECK(a.epsilon_star == Rational(-1, 2));
    CHECK(a.vertices == std::vector<std::vector<Rational>>{testing::alloc({"1", "1"})});
    CHECK(approximate_core(testing::golden("B"), 100).vertices.size() == 1);
    CHECK(approximate_core(testing::golden("D"), 2).partial);
}

TEST_CASE("potential characterization")
{
    FlowNetwork d = testing::golden("D");
    PotentialCheck in = potential_characterization_check(d, testing::alloc({"1", "0", "1", "0"}));
    CHECK(in.holds());
    CHECK(in.phi.at(0) == 0);
    CHECK(in.phi.at(1) == 1);
    CHECK(in.phi.at(2) == 1);
    CHECK(in.phi.at(3) == 1);

    PotentialCheck out = potential_characterization_check(d, testing::alloc({"0", "1", "1", "0"}));
    CHECK_FALSE(out.holds());
    CHECK(out.failure == PotentialCheck::Failure::SinkLevel);
    CHECK(out.phi.at(3) == 0);

    PotentialCheck c = potential_characterization_check(testing::golden("C"), testing::alloc({"1"}));
    CHECK(c.holds());
    CHECK(c.phi.at(1) == 1);
}

TEST_CASE("property: the three core descriptions agree")
{
    std::mt19937_64 rng(11);
    for (const auto& net : testing::corpus(30, 201)) {
        CAPTURE(serialize_network(net));
        GameSigmas s = game_sigmas(net);
        ApproxCore core = approximate_core(net, 1000);
        REQUIRE_FALSE(core.vertices.empty());
        std::vector<std::vector<Rational>> probes = core.vertices;
        const std::size_t n = net.player_count();
        std::uniform_int_distribution<int> weight(0, 6);
        for (int i = 0; i < 20; ++i) {
            std::vector<Rational> w(n);
            Rational total = 0;
            for (auto& v : w) {
                v = weight(rng);
                total += v;
            }
            if (total == 0) {
                continue;
            }
            for (auto& v : w) {
                v = v * s.sigma_n / total;
            }
            probes.push_back(w);
            // A convex combination of two vertices is in the core as well.
            const auto& a = core.vertices[static_cast<std::size_t>(i) % core.vertices.size()];
            const auto& b = core.vertices[static_cast<std::size_t>(i * 7 + 3) % core.vertices.size()];
            std::vector<Rational> mix(n);
            for (std::size_t j = 0; j < n; ++j) {
                mix[j] = (a[j] + 2 * b[j]) / 3;
            }
            probes.push_back(mix);
        }
        for (const auto& x : probes) {
            bool by_paths = auxiliary_core_membership(net, x).in_core;
            CHECK(by_paths == brute_core_membership(net, x));
            CHECK(by_paths == potential_characterization_check(net, x).holds());
        }
    }
}

TEST_CASE("property: vertices are the constrained min cuts and pay nothing to avoidable arcs")
{
    for (const auto& net : testing::corpus(30, 301)) {
        CAPTURE(serialize_network(net));
        ApproxCore core = approximate_core(net, 1000);
        VertexEnumeration brute = enumerate_vertices(brute_core_pool(net));
        auto expected = brute.vertices;
        auto actual = core.vertices;
        std::sort(expected.begin(), expected.end());
        std::sort(actual.begin(), actual.end());
        CHECK(expected == actual);
        CHECK(epsilon_star(net) == brute_epsilon_star(net));

        // An arc missed by some maximum system disjoint on N gets zero in every vertex.
        PathSystem base = max_partially_disjoint(net, net.private_mask());
        ArcMask on_base(net.arc_count(), false);
        for (const Path& p : base.paths) {
            for (ArcId id : p) {
                on_base[static_cast<std::size_t>(id)] = true;
            }
        }
        for (const auto& x : core.vertices) {
            for (std::size_t i = 0; i < net.player_count(); ++i) {
                if (!on_base[static_cast<std::size_t>(net.arc_of(net.players()[i]))]) {
                    CHECK(x[i] == 0);
                }
            }
        }
    }
}

TEST_CASE("property: the potential system projects onto the core")
{
    for (const auto& net : testing::corpus(20, 401)) {
        CAPTURE(serialize_network(net));
        ConstraintPool lifted = core_pool(net);
        ApproxCore core = approximate_core(net, 1000);
        const std::size_t n = net.player_count();
        // Every vertex lifts with its own potential.
        for (const auto& x : core.vertices) {
            Potential phi = potential(net, x);
            std::vector<Rational> point = x;
            for (VertexId v = 0; static_cast<std::size_t>(v) < net.vertex_count(); ++v) {
                point.push_back(phi.at(v));
            }
            CHECK(lifted.satisfies_all(point));
        }
        // Every functional over x has the same range on the lifted system and on the core.
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<Rational> f(lifted.variable_count());
            f[i] = 1;
            Range r = functional_range(lifted, f);
            Rational lo = core.vertices.front()[i];
            Rational hi = lo;
            for (const auto& x : core.vertices) {
                lo = std::min(lo, x[i]);
                hi = std::max(hi, x[i]);
            }
            CHECK(r.min == lo);
            CHECK(r.max == hi);
        }
    }
}
