#include "support.hpp"

#include "flowgame/cli.hpp"
#include "flowgame/coresolve.hpp"
#include "flowgame/generator.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace flowgame;

namespace {

struct Invocation
{
    int code = 0;
    std::string out;
    std::string err;
};

Invocation invoke(std::vector<std::string> args)
{
    std::ostringstream out;
    std::ostringstream err;
    Invocation r;
    r.code = run(args, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::string data(const std::string& name)
{
    return std::string(FLOWGAME_TEST_DATA) + "/" + name;
}

bool has_line(const std::string& text, const std::string& line)
{
    std::istringstream in(text);
    for (std::string l; std::getline(in, l);) {
        if (l == line) {
            return true;
        }
    }
    return false;
}

class TempFile
{
  public:
    TempFile(const std::string& name, const std::string& content)
        : path_(std::filesystem::temp_directory_path() / ("flowgame_test_" + name))
    {
        std::ofstream(path_) << content;
    }
    ~TempFile() { std::filesystem::remove(path_); }
    TempFile(const TempFile&) = delete;
    TempFile& operator=(const TempFile&) = delete;

    std::string str() const { return path_.string(); }

  private:
    std::filesystem::path path_;
};

}  // namespace

TEST_CASE("cli golden reports")
{
    Invocation b = invoke({"nucleon", data("instanceB.fg")});
    CHECK(b.code == exit_code::success);
    CHECK(has_line(b.out, "allocation: 1, 1"));
    CHECK(has_line(b.out, "rounds: 1"));
    CHECK(has_line(b.out, "round k=1 epsilon=0 fixed_arcs=2 fixed_jumps=0 cuts=0"));

    Invocation a = invoke({"approx-core", data("instanceA.fg")});
    CHECK(a.code == exit_code::success);
    CHECK(has_line(a.out, "epsilon_star: -1/2"));
    CHECK(has_line(a.out, "scaling_factor: 1/2"));
    CHECK(has_line(a.out, "vertex_count: 1"));
    CHECK(has_line(a.out, "vertex: 1, 1"));

    Invocation g = invoke({"gamma", data("instanceD.fg"), "--coalition", "1,4"});
    CHECK(g.code == exit_code::success);
    CHECK(has_line(g.out, "gamma: 1"));
    CHECK(has_line(g.out, "path: s -> a -> b -> t"));

    Invocation d = invoke({"nucleon", data("instanceD.fg")});
    CHECK(has_line(d.out, "allocation: 2/3, 1/3, 1/3, 2/3"));
    CHECK(has_line(d.out, "round k=2 epsilon=1/3 fixed_arcs=4 fixed_jumps=1 cuts=5"));
    CHECK(has_line(d.out, "spot_checks: excess_checks=200 excess_failures=0 potential_checks=1 potential_failures=0"));

    Invocation c = invoke({"nucleon", data("instanceC.fg")});
    CHECK(has_line(c.out, "core_flag: yes"));

    Invocation o = invoke({"oracle", data("instanceA.fg")});
    CHECK(o.code == exit_code::success);
    CHECK(has_line(o.out, "allocation: 1/2, 1/2"));
    CHECK(has_line(o.out, "excess {1}: -1/2"));

    Invocation v = invoke({"validate", data("instanceD.fg")});
    CHECK(has_line(v.out, "valid: yes"));
}

TEST_CASE("cli exit codes")
{
    CHECK(invoke({}).code == exit_code::usage);
    CHECK(invoke({"bogus"}).code == exit_code::usage);
    CHECK(invoke({"gamma", data("instanceD.fg")}).code == exit_code::usage);
    CHECK(invoke({"validate", "/nonexistent/instance.fg"}).code == exit_code::invalid);
    CHECK(invoke({"gamma", data("instanceD.fg"), "--coalition", "9"}).code == exit_code::usage);

    TempFile broken("broken.fg", "vertices 2\nsource 0\nsink 1\narc 0 1 private 1\narc 0 1 private 1\n");
    Invocation dup = invoke({"validate", broken.str()});
    CHECK(dup.code == exit_code::invalid);
    CHECK_FALSE(dup.err.empty());

    GeneratorParams p;
    p.seed = 5;
    p.vertices = 8;
    p.private_arcs = 13;
    p.public_arcs = 3;
    TempFile big("big.fg", emit_instance(generate_instance(p)));
    Invocation guarded = invoke({"oracle", big.str()});
    CHECK(guarded.code == exit_code::size_guard);
    CHECK(invoke({"nucleon", big.str(), "--spot-samples", "5"}).code == exit_code::success);
}

TEST_CASE("cli output is deterministic")
{
    for (const char* name : {"instanceD.fg", "jump_cycle.fg"}) {
        std::vector<std::string> args{"nucleon", data(name), "--seed", "7"};
        CHECK(invoke(args).out == invoke(args).out);
    }
    CHECK(invoke({"gen", "--seed", "11"}).out == invoke({"gen", "--seed", "11"}).out);
}

TEST_CASE("allocation files round-trip through core-check")
{
    FlowNetwork d = testing::golden("D");
    Allocation x = testing::alloc({"1", "0", "1", "0"});
    std::string text = format_allocation(d, x);
    CHECK(parse_allocation(d, text) == x);
    CHECK_THROWS_AS(parse_allocation(d, "1 1\n2 0\n3 1\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_allocation(d, "1 1\n1 0\n2 0\n3 1\n4 0\n"), std::invalid_argument);

    TempFile inside("inside.alloc", text);
    Invocation ok = invoke({"core-check", data("instanceD.fg"), "--alloc", inside.str()});
    CHECK(ok.code == exit_code::success);
    CHECK(has_line(ok.out, "in_core: yes"));

    TempFile outside("outside.alloc", format_allocation(d, testing::alloc({"1", "1", "0", "0"})));
    Invocation no = invoke({"core-check", data("instanceD.fg"), "--alloc", outside.str()});
    CHECK(no.code == exit_code::success);
    CHECK(has_line(no.out, "in_core: no"));

    FlowNetwork a = testing::golden("A");
    TempFile original("original.alloc", format_allocation(a, testing::alloc({"1/2", "1/2"})));
    Invocation scaled =
        invoke({"core-check", data("instanceA.fg"), "--alloc", original.str(), "--scale", "original"});
    CHECK(has_line(scaled.out, "auxiliary_allocation: 1, 1"));
    CHECK(has_line(scaled.out, "in_core: yes"));
}

TEST_CASE("generator is deterministic and valid")
{
    GeneratorParams p;
    p.seed = 1;
    CHECK(emit_instance(generate_instance(p)) == emit_instance(generate_instance(p)));
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        p.seed = seed;
        p.vertices = 4 + static_cast<int>(seed % 5);
        p.private_arcs = 3 + static_cast<int>(seed % 6);
        p.public_arcs = 4 + static_cast<int>(seed % 3);
        GeneratedInstance g = generate_instance(p);
        CHECK(validate(g.network).ok());
        CHECK(g.network.player_count() == static_cast<std::size_t>(p.private_arcs));
        CHECK(parse_network(emit_instance(g)) == g.network);

        GeneratedInstance bridged = generate_bridged_instance(p);
        CHECK(validate(bridged.network).ok());
        CHECK(game_sigmas(bridged.network).sigma_n == 1);
    }
    p.vertices = 1;
    CHECK_THROWS_AS(generate_instance(p), std::invalid_argument);
    p.vertices = 5;
    p.private_arcs = 17;
    CHECK_THROWS_AS(generate_instance(p), std::invalid_argument);
}
