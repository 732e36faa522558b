#include "flowgame/cli.hpp"

#include "flowgame/coresolve.hpp"
#include "flowgame/flowcore.hpp"
#include "flowgame/generator.hpp"
#include "flowgame/nucleon.hpp"
#include "flowgame/reforacle.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>

namespace flowgame {

namespace {

constexpr int internal_error = 4;

class UsageError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

class InvalidInstance : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

struct Common
{
    std::string file;
    bool preprocess = false;
};

const char* yes_no(bool b) { return b ? "yes" : "no"; }

std::string read_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw InvalidInstance("cannot open " + path);
    }
    std::ostringstream text;
    text << in.rdbuf();
    return text.str();
}

std::string describe_violation(const FlowNetwork& net, const Violation& v)
{
    if (v.kind == Violation::Kind::AllPublicPath) {
        return "all-public path " + describe_path(net, v.witness);
    }
    const Arc& a = net.arc(v.arc);
    return "arc #" + std::to_string(v.arc) + " (" + net.vertex_name(a.tail) + " -> " + net.vertex_name(a.head) +
           ") lies on no s-t path";
}

std::string players_line(const FlowNetwork& net)
{
    std::string s;
    for (PlayerId p : net.players()) {
        s += (s.empty() ? "" : ", ") + std::to_string(p);
    }
    return s;
}

// Loads, optionally preprocesses, and prints what preprocessing removed.
FlowNetwork load(const Common& common, std::ostream& out)
{
    FlowNetwork net = parse_network(read_file(common.file));
    if (!common.preprocess) {
        return net;
    }
    PreprocessResult pre = preprocess(net);
    std::string arcs;
    for (ArcId id : pre.removed_arcs) {
        arcs += (arcs.empty() ? "#" : ", #") + std::to_string(id);
    }
    std::string players;
    for (PlayerId p : pre.removed_players) {
        players += (players.empty() ? "" : ", ") + std::to_string(p);
    }
    out << "preprocess: removed_arcs=[" << arcs << "] removed_players=[" << players << "]\n";
    return std::move(pre.network);
}

void print_digest(const FlowNetwork& net, std::ostream& out)
{
    GameSigmas s = game_sigmas(net);
    out << "instance: |V|=" << net.vertex_count() << " |E|=" << net.arc_count() << " |N|=" << net.player_count()
        << " sigma_N=" << s.sigma_n << " sigma_E=" << s.sigma_e << '\n';
}

// Loads a network that must validate cleanly and prints its digest.
FlowNetwork load_valid(const Common& common, std::ostream& out)
{
    FlowNetwork net = load(common, out);
    ValidationReport report = validate(net);
    if (!report.ok()) {
        std::string what = "instance violates the model assumptions";
        for (const auto& v : report.violations) {
            what += "\n  " + describe_violation(net, v);
        }
        throw InvalidInstance(what);
    }
    print_digest(net, out);
    out << "players: " << players_line(net) << '\n';
    return net;
}

int cmd_validate(const Common& common, std::ostream& out)
{
    FlowNetwork net = [&] {
        try {
            return load(common, out);
        } catch (const AssumptionError& e) {
            out << "valid: no\n";
            throw;
        }
    }();
    ValidationReport report = validate(net);
    out << "valid: " << yes_no(report.ok()) << '\n';
    for (const auto& v : report.violations) {
        out << "violation: " << describe_violation(net, v) << '\n';
    }
    if (!report.ok()) {
        return exit_code::invalid;
    }
    print_digest(net, out);
    return exit_code::success;
}

Coalition parse_coalition(const FlowNetwork& net, const std::string& text)
{
    std::vector<PlayerId> members;
    std::istringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        if (item.empty()) {
            continue;
        }
        PlayerId p = 0;
        try {
            std::size_t used = 0;
            p = std::stoi(item, &used);
            if (used != item.size()) {
                throw std::invalid_argument(item);
            }
        } catch (const std::exception&) {
            throw UsageError("malformed player id '" + item + "' in --coalition");
        }
        if (!std::binary_search(net.players().begin(), net.players().end(), p)) {
            throw UsageError("unknown player " + std::to_string(p) + " in --coalition");
        }
        if (std::find(members.begin(), members.end(), p) != members.end()) {
            throw UsageError("player " + std::to_string(p) + " listed twice in --coalition");
        }
        members.push_back(p);
    }
    return Coalition(std::move(members));
}

int cmd_gamma(const Common& common, const std::string& coalition_text, std::ostream& out)
{
    FlowNetwork net = load_valid(common, out);
    Coalition s = parse_coalition(net, coalition_text);
    CoalitionValue v = coalition_value(net, s);
    out << "coalition: " << s.to_string() << '\n';
    out << "gamma: " << v.value << '\n';
    for (const Path& p : v.paths) {
        out << "path: " << describe_path(net, p) << '\n';
    }
    return exit_code::success;
}

int cmd_approx_core(const Common& common, std::size_t max_vertices, std::ostream& out)
{
    FlowNetwork net = load_valid(common, out);
    ApproxCore core = approximate_core(net, max_vertices);
    out << "epsilon_star: " << to_string(core.epsilon_star) << '\n';
    out << "scaling_factor: " << to_string(core.scaling_factor) << '\n';
    out << "vertex_count: " << core.vertices.size() << '\n';
    out << "partial: " << yes_no(core.partial) << '\n';
    out << "scale: auxiliary\n";
    for (const auto& v : core.vertices) {
        out << "vertex: " << join(v) << '\n';
    }
    return exit_code::success;
}

Rational path_length(const FlowNetwork& net, const Allocation& x, const Path& path)
{
    Rational total = 0;
    for (ArcId id : path) {
        int i = net.player_index_of_arc(id);
        if (i >= 0) {
            total += x[static_cast<std::size_t>(i)];
        }
    }
    return total;
}

int cmd_core_check(const Common& common, const std::string& alloc_file, const std::string& scale, std::ostream& out)
{
    FlowNetwork net = load_valid(common, out);
    Allocation x = [&] {
        try {
            return parse_allocation(net, read_file(alloc_file));
        } catch (const std::invalid_argument& e) {
            throw InvalidInstance(std::string("allocation file: ") + e.what());
        }
    }();
    GameSigmas sigmas = game_sigmas(net);
    out << "scale: " << scale << '\n';
    if (scale == "original") {
        x = scale_allocation(sigmas, x, Scale::Auxiliary);
    }
    out << "auxiliary_allocation: " << join(x) << '\n';
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (sgn(x[i]) < 0) {
            out << "in_core: no\n";
            out << "reason: negative payoff to player " << net.players()[i] << '\n';
            return exit_code::success;
        }
    }
    if (sum(x) != sigmas.sigma_n) {
        out << "in_core: no\n";
        out << "reason: total " << to_string(sum(x)) << " differs from sigma_N=" << sigmas.sigma_n << '\n';
        return exit_code::success;
    }
    Membership m = auxiliary_core_membership(net, x);
    out << "in_core: " << yes_no(m.in_core) << '\n';
    if (m.violation) {
        out << "violation: path " << describe_path(net, *m.violation) << " length "
            << to_string(path_length(net, x, *m.violation)) << '\n';
    }
    PotentialCheck pc = potential_characterization_check(net, x);
    out << "potential_check: " << (pc.holds() ? "holds" : "fails (" + describe(pc.failure) + ")") << '\n';
    return exit_code::success;
}

void print_rounds_and_point(const FlowNetwork& net, bool core_flag, const std::vector<Allocation>& core_vertices,
                            const Allocation& allocation, const Allocation& auxiliary, bool singleton,
                            std::ostream& out)
{
    (void)net;
    out << "core_flag: " << yes_no(core_flag) << '\n';
    if (core_flag) {
        out << "core_vertex_count: " << core_vertices.size() << '\n';
        for (const auto& v : core_vertices) {
            out << "core_vertex: " << join(v) << '\n';
        }
        return;
    }
    out << "singleton: " << yes_no(singleton) << '\n';
    out << "allocation: " << join(allocation) << '\n';
    out << "auxiliary_allocation: " << join(auxiliary) << '\n';
}

int cmd_nucleon(const Common& common, bool use_oracle, const NucleonOptions& options, std::ostream& out)
{
    FlowNetwork net = load_valid(common, out);
    if (use_oracle) {
        BruteNucleon b = brute_nucleon(net);
        out << "method: brute-force\n";
        print_rounds_and_point(net, b.core_flag, b.core_vertices, b.allocation, b.auxiliary, b.singleton, out);
        if (!b.core_flag) {
            out << "rounds: " << b.epsilons.size() << '\n';
            for (std::size_t k = 0; k < b.epsilons.size(); ++k) {
                out << "round k=" << k + 1 << " epsilon=" << to_string(b.epsilons[k]) << '\n';
            }
        }
        return exit_code::success;
    }
    NucleonOutcome o = nucleon(net, options);
    out << "method: path-oracle\n";
    print_rounds_and_point(net, o.core_flag, o.core_vertices, o.allocation, o.auxiliary, o.singleton, out);
    if (!o.core_flag) {
        out << "rounds: " << o.rounds.size() << '\n';
        for (const auto& r : o.rounds) {
            out << format_round(r) << '\n';
        }
        out << "spot_checks: excess_checks=" << o.spot.excess_checks << " excess_failures=" << o.spot.excess_failures
            << " potential_checks=" << o.spot.potential_checks
            << " potential_failures=" << o.spot.potential_failures << '\n';
    }
    return exit_code::success;
}

int cmd_oracle(const Common& common, std::ostream& out)
{
    FlowNetwork net = load_valid(common, out);
    out << "epsilon_star: " << to_string(brute_epsilon_star(net)) << '\n';
    if (net.arc_count() <= max_arcs_for_brute_sigma) {
        out << "sigma_N: " << brute_sigma(net, net.private_mask()) << '\n';
        out << "sigma_E: " << brute_sigma(net, net.full_mask()) << '\n';
    } else {
        out << "sigma_N: skipped (more than " << max_arcs_for_brute_sigma << " arcs)\n";
        out << "sigma_E: skipped (more than " << max_arcs_for_brute_sigma << " arcs)\n";
    }
    BruteNucleon b = brute_nucleon(net);
    print_rounds_and_point(net, b.core_flag, b.core_vertices, b.allocation, b.auxiliary, b.singleton, out);
    if (b.core_flag) {
        return exit_code::success;
    }
    for (std::size_t k = 0; k < b.epsilons.size(); ++k) {
        out << "round k=" << k + 1 << " epsilon=" << to_string(b.epsilons[k]) << '\n';
    }
    for (const auto& e : excess_vector(net, b.allocation)) {
        out << "excess " << e.coalition.to_string() << ": " << (e.excess ? to_string(*e.excess) : "+inf") << '\n';
    }
    return exit_code::success;
}

int cmd_gen(const GeneratorParams& params, bool sigma_one, std::ostream& out)
{
    try {
        out << emit_instance(sigma_one ? generate_bridged_instance(params) : generate_instance(params));
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    return exit_code::success;
}

}  // namespace

Allocation parse_allocation(const FlowNetwork& net, std::string_view text)
{
    std::vector<std::optional<Rational>> slots(net.player_count());
    std::istringstream in{std::string(text)};
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        std::istringstream fields(line.substr(0, line.find('#')));
        std::vector<std::string> tokens;
        for (std::string t; fields >> t;) {
            tokens.push_back(t);
        }
        if (tokens.empty()) {
            continue;
        }
        const std::string where = "line " + std::to_string(number) + ": ";
        if (tokens.size() != 2) {
            throw std::invalid_argument(where + "expected 'player-id p/q'");
        }
        PlayerId p = 0;
        try {
            std::size_t used = 0;
            p = std::stoi(tokens[0], &used);
            if (used != tokens[0].size()) {
                throw std::invalid_argument(tokens[0]);
            }
        } catch (const std::exception&) {
            throw std::invalid_argument(where + "malformed player id '" + tokens[0] + "'");
        }
        int index = std::binary_search(net.players().begin(), net.players().end(), p) ? net.player_index(p) : -1;
        if (index < 0) {
            throw std::invalid_argument(where + "unknown player " + std::to_string(p));
        }
        auto& slot = slots[static_cast<std::size_t>(index)];
        if (slot) {
            throw std::invalid_argument(where + "player " + std::to_string(p) + " listed twice");
        }
        try {
            slot = parse_rational(tokens[1]);
        } catch (const std::invalid_argument&) {
            throw std::invalid_argument(where + "malformed rational '" + tokens[1] + "'");
        }
    }
    Allocation x;
    for (std::size_t i = 0; i < slots.size(); ++i) {
        if (!slots[i]) {
            throw std::invalid_argument("no payoff for player " + std::to_string(net.players()[i]));
        }
        x.push_back(*slots[i]);
    }
    return x;
}

std::string format_allocation(const FlowNetwork& net, const Allocation& x)
{
    std::string s;
    for (std::size_t i = 0; i < x.size(); ++i) {
        s += std::to_string(net.players()[i]) + ' ' + to_string(x[i]) + '\n';
    }
    return s;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Exact solver for flow games with public arcs", "flowgame"};
    app.require_subcommand(1);

    Common common;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("instance", common.file, "Instance file")->required();
        sub->add_flag("--preprocess", common.preprocess, "Delete arcs on no s-t path before solving");
    };

    auto* validate_cmd = app.add_subcommand("validate", "Check the model assumptions");
    add_common(validate_cmd);

    std::string coalition;
    auto* gamma_cmd = app.add_subcommand("gamma", "Value of a coalition");
    add_common(gamma_cmd);
    gamma_cmd->add_option("--coalition", coalition, "Comma-separated player ids")->required();

    std::size_t max_vertices = 1000;
    auto* approx_cmd = app.add_subcommand("approx-core", "Optimal approximate core");
    add_common(approx_cmd);
    approx_cmd->add_option("--max-vertices", max_vertices, "Cap on listed vertices")->check(CLI::PositiveNumber);

    std::string alloc_file;
    std::string scale = "auxiliary";
    auto* check_cmd = app.add_subcommand("core-check", "Membership of an allocation in the auxiliary core");
    add_common(check_cmd);
    check_cmd->add_option("--alloc", alloc_file, "Allocation file")->required();
    check_cmd->add_option("--scale", scale, "Scale of the allocation file")
        ->check(CLI::IsMember({"auxiliary", "original"}));

    bool use_oracle = false;
    NucleonOptions options;
    options.spot_samples = 200;
    auto* nucleon_cmd = app.add_subcommand("nucleon", "The nucleon by sequential LPs");
    add_common(nucleon_cmd);
    nucleon_cmd->add_flag("--oracle", use_oracle, "Use the brute-force recursion");
    nucleon_cmd->add_option("--spot-samples", options.spot_samples, "Sampled coalitions per round")
        ->check(CLI::NonNegativeNumber);
    nucleon_cmd->add_option("--seed", options.seed, "Seed for the spot-check sampler");

    auto* oracle_cmd = app.add_subcommand("oracle", "All brute-force reference computations");
    add_common(oracle_cmd);

    GeneratorParams params;
    bool sigma_one = false;
    auto* gen_cmd = app.add_subcommand("gen", "Random valid instance");
    gen_cmd->add_option("--seed", params.seed, "Seed");
    gen_cmd->add_option("--vertices", params.vertices, "Vertex count");
    gen_cmd->add_option("--private", params.private_arcs, "Private arc count");
    gen_cmd->add_option("--public", params.public_arcs, "Public arc count");
    gen_cmd->add_flag("--sigma-one", sigma_one, "Route every path through one private bridge arc");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? exit_code::success : exit_code::usage;
    }

    try {
        if (!gen_cmd->parsed()) {
            std::string echo;
            for (const auto& a : args) {
                echo += (echo.empty() ? "" : " ") + a;
            }
            out << "command: " << echo << '\n';
        }
        if (validate_cmd->parsed()) {
            return cmd_validate(common, out);
        }
        if (gamma_cmd->parsed()) {
            return cmd_gamma(common, coalition, out);
        }
        if (approx_cmd->parsed()) {
            return cmd_approx_core(common, max_vertices, out);
        }
        if (check_cmd->parsed()) {
            return cmd_core_check(common, alloc_file, scale, out);
        }
        if (nucleon_cmd->parsed()) {
            return cmd_nucleon(common, use_oracle, options, out);
        }
        if (oracle_cmd->parsed()) {
            return cmd_oracle(common, out);
        }
        return cmd_gen(params, sigma_one, out);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return exit_code::usage;
    } catch (const ParseError& e) {
        err << "parse error";
        if (e.line() > 0) {
            err << " at line " << e.line();
        }
        err << ": " << e.what() << '\n';
        return exit_code::invalid;
    } catch (const AssumptionError& e) {
        err << "invalid instance: " << e.what() << '\n';
        return exit_code::invalid;
    } catch (const InvalidInstance& e) {
        err << "invalid: " << e.what() << '\n';
        return exit_code::invalid;
    } catch (const SizeGuardError& e) {
        err << "size guard: " << e.what() << '\n';
        return exit_code::size_guard;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return internal_error;
    }
}

}  // namespace flowgame
