#include "flowgame/nucleon.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <stdexcept>

namespace flowgame {

std::optional<Rational> OracleResult::minimum() const
{
    std::optional<Rational> best;
    for (const auto* c : {&best_removed, &best_jump}) {
        if (*c && (!best || (*c)->excess < *best)) {
            best = (*c)->excess;
        }
    }
    return best;
}

namespace {

ConstraintPool build_core_pool(const FlowNetwork& net, bool with_epsilon)
{
    ConstraintPool pool;
    const std::size_t n = net.player_count();
    for (PlayerId p : net.players()) {
        pool.add_variable("x" + std::to_string(p));
    }
    for (const auto& name : net.vertex_names()) {
        pool.add_variable("phi(" + name + ")");
    }
    if (with_epsilon) {
        pool.add_variable("epsilon");
    }
    auto phi = [&](VertexId v) { return n + static_cast<std::size_t>(v); };
    const std::size_t width = pool.variable_count();

    for (std::size_t i = 0; i < n; ++i) {
        Row row{std::vector<Rational>(width), Sense::GreaterEqual, 0, "nonneg:" + std::to_string(net.players()[i])};
        row.coeffs[i] = 1;
        pool.add_row(std::move(row));
    }
    Row total{std::vector<Rational>(width), Sense::Equal, sigma(net, net.private_mask()), "grand"};
    for (std::size_t i = 0; i < n; ++i) {
        total.coeffs[i] = 1;
    }
    pool.add_row(std::move(total));
    for (const auto& a : net.arcs()) {
        Row row{std::vector<Rational>(width), Sense::GreaterEqual, 0, "arc:" + std::to_string(a.id)};
        if (a.is_private()) {
            row.coeffs[static_cast<std::size_t>(net.player_index_of_arc(a.id))] += 1;
        }
        row.coeffs[phi(a.tail)] += 1;
        row.coeffs[phi(a.head)] -= 1;
        pool.add_row(std::move(row));
    }
    Row source{std::vector<Rational>(width), Sense::Equal, 0, "phi-source"};
    source.coeffs[phi(net.source())] = 1;
    pool.add_row(std::move(source));
    Row sink{std::vector<Rational>(width), Sense::Equal, 1, "phi-sink"};
    sink.coeffs[phi(net.sink())] = 1;
    pool.add_row(std::move(sink));
    return pool;
}

std::vector<Rational> unit(std::size_t size, std::size_t index)
{
    std::vector<Rational> v(size);
    v[index] = 1;
    return v;
}

}  // namespace

ConstraintPool core_pool(const FlowNetwork& net)
{
    return build_core_pool(net, false);
}

NucleonEngine::NucleonEngine(const FlowNetwork& net, NucleonOptions options)
    : net_(net),
      options_(options),
      sigmas_(game_sigmas(net)),
      base_(net),
      pairs_(find_jump_pairs(net, base_)),
      pool_(build_core_pool(net, true))
{
    contexts_.emplace_back();  // no face before round one
    epsilons_.emplace_back(0);

    // Round one: epsilon_1 = 0 and the face is the auxiliary core.
    epsilons_.emplace_back(0);
    const std::size_t before = pool_.row_count();
    contexts_.push_back(make_context(nullptr));
    const Context& ctx = contexts_.back();
    RoundRecord record;
    record.k = 1;
    record.epsilon = 0;
    record.fixed_arcs = static_cast<int>(std::count(ctx.fixed_player.begin(), ctx.fixed_player.end(), true));
    record.fixed_jumps = static_cast<int>(std::count(ctx.fixed_pair.begin(), ctx.fixed_pair.end(), true));
    record.cuts = static_cast<int>(pool_.row_count() - before);
    transcript_.push_back(record);
    finished_ = ctx.hull.is_point();
}

std::vector<PlayerId> NucleonEngine::fixed_players() const
{
    std::vector<PlayerId> out;
    const auto& ctx = contexts_.back();
    for (std::size_t i = 0; i < ctx.fixed_player.size(); ++i) {
        if (ctx.fixed_player[i]) {
            out.push_back(net_.players()[i]);
        }
    }
    return out;
}

std::vector<JumpPair> NucleonEngine::fixed_pairs() const
{
    std::vector<JumpPair> out;
    const auto& ctx = contexts_.back();
    for (std::size_t i = 0; i < pairs_.size(); ++i) {
        if (ctx.fixed_pair[i]) {
            out.push_back(pairs_[i]);
        }
    }
    return out;
}

int NucleonEngine::coalition_gamma(const Coalition& s) const
{
    if (s.size() == net_.player_count()) {
        return sigmas_.sigma_n;
    }
    auto it = gamma_cache_.find(s);
    if (it != gamma_cache_.end()) {
        return it->second;
    }
    int value = coalition_value(net_, s).value;
    gamma_cache_.emplace(s, value);
    return value;
}

std::vector<Rational> NucleonEngine::indicator(const Coalition& s) const
{
    std::vector<Rational> v(net_.player_count());
    for (PlayerId p : s.members()) {
        v[static_cast<std::size_t>(net_.player_index(p))] = 1;
    }
    return v;
}

Rational NucleonEngine::value_of(const Coalition& s, const Allocation& x) const
{
    Rational total = 0;
    for (PlayerId p : s.members()) {
        total += x[static_cast<std::size_t>(net_.player_index(p))];
    }
    return total;
}

OracleResult NucleonEngine::oracle(const Allocation& x, const Context& ctx) const
{
    std::map<Coalition, CriticalCoalition> found;
    auto consider = [&](CriticalCoalition c) {
        if (c.members.empty()) {
            return;
        }
        c.value = coalition_gamma(c.members);
        if (c.value == 0 || ctx.hull.constant_on(indicator(c.members))) {
            return;
        }
        c.excess = (value_of(c.members, x) - c.value) / c.value;
        auto it = found.find(c.members);
        if (it == found.end()) {
            found.emplace(c.members, std::move(c));
        } else if (c.kind == CriticalCoalition::Kind::RemovedArc &&
                   it->second.kind == CriticalCoalition::Kind::JumpArc) {
            it->second = std::move(c);
        }
    };
    auto players_of = [&](const std::vector<bool>& used, const std::vector<ArcId>& map, std::vector<PlayerId>& out) {
        for (std::size_t i = 0; i < used.size(); ++i) {
            if (used[i] && map[i] >= 0 && net_.arc(map[i]).owner) {
                out.push_back(*net_.arc(map[i]).owner);
            }
        }
    };

    // Both families are swept over the auxiliary network and over its relaxation.
    auto sweep = [&](const ArcMask& arcs) {
        WeightedGraph graph;
        graph.vertex_count = net_.vertex_count();
        graph.source = net_.source();
        graph.sink = net_.sink();
        std::vector<ArcId> origin;
        for (const auto& a : net_.arcs()) {
            if (arcs[static_cast<std::size_t>(a.id)]) {
                graph.arcs.push_back({a.tail, a.head, arc_length(net_, x, a.id)});
                origin.push_back(a.id);
            }
        }

        for (std::size_t i = 0; i < net_.player_count(); ++i) {
            if (ctx.fixed_player[i]) {
                continue;
            }
            PlayerId player = net_.players()[i];
            ArcId removed = net_.arc_of(player);
            WeightedGraph minus;
            minus.vertex_count = graph.vertex_count;
            minus.source = graph.source;
            minus.sink = graph.sink;
            std::vector<ArcId> map;
            for (std::size_t g = 0; g < graph.arcs.size(); ++g) {
                if (origin[g] != removed) {
                    minus.arcs.push_back(graph.arcs[g]);
                    map.push_back(origin[g]);
                }
            }
            for (int tau = 0; tau <= sigmas_.sigma_e; ++tau) {
                auto flow = min_cost_disjoint_paths(minus, tau);
                if (!flow) {
                    break;
                }
                std::vector<PlayerId> members{player};
                players_of(flow->used, map, members);
                CriticalCoalition c;
                c.kind = CriticalCoalition::Kind::RemovedArc;
                c.members = Coalition(std::move(members));
                c.player = player;
                c.tau = tau;
                consider(std::move(c));
            }
        }

        for (std::size_t j = 0; j < pairs_.size(); ++j) {
            if (ctx.fixed_pair[j]) {
                continue;
            }
            const JumpPair& pair = pairs_[j];
            WeightedGraph plus = graph;
            std::vector<ArcId> map = origin;
            plus.arcs.push_back({pair.u, pair.v, Rational(-sigmas_.sigma_n - 1)});
            map.push_back(-1);
            const std::size_t artificial = plus.arcs.size() - 1;
            for (int tau = 1; tau <= sigmas_.sigma_e; ++tau) {
                auto flow = min_cost_disjoint_paths(plus, tau);
                if (!flow || !flow->used[artificial]) {
                    break;
                }
                std::vector<PlayerId> members;
                players_of(flow->used, map, members);
                for (ArcId id : pair.representative) {
                    if (net_.arc(id).owner) {
                        members.push_back(*net_.arc(id).owner);
                    }
                }
                CriticalCoalition c;
                c.kind = CriticalCoalition::Kind::JumpArc;
                c.members = Coalition(std::move(members));
                c.pair = {pair.u, pair.v};
                c.tau = tau;
                consider(std::move(c));
            }
        }
    };
    sweep(ctx.arcs);
    if (ctx.relaxed_arcs != ctx.arcs) {
        sweep(ctx.relaxed_arcs);
    }

    OracleResult result;
    for (auto& [members, c] : found) {
        auto& best = c.kind == CriticalCoalition::Kind::RemovedArc ? result.best_removed : result.best_jump;
        if (!best || c.excess < best->excess) {
            best = c;
        }
        result.candidates.push_back(std::move(c));
    }
    std::stable_sort(result.candidates.begin(), result.candidates.end(),
                     [](const CriticalCoalition& a, const CriticalCoalition& b) { return a.excess < b.excess; });
    return result;
}

OracleResult NucleonEngine::separation_oracle(const Allocation& x) const
{
    return oracle(x, contexts_.back());
}

bool NucleonEngine::separate_levels(const Allocation& x)
{
    const std::size_t width = pool_.variable_count();
    ShortestPath shortest = shortest_st_path(net_, x);
    if (shortest.length < 1) {
        std::vector<PlayerId> members;
        for (ArcId id : shortest.path) {
            if (net_.arc(id).owner) {
                members.push_back(*net_.arc(id).owner);
            }
        }
        Coalition s(std::move(members));
        Row row{indicator(s), Sense::GreaterEqual, 1, "core:" + s.to_string()};
        row.coeffs.resize(width);
        if (!pool_.add_row(std::move(row))) {
            throw std::logic_error("core separation repeated a cut");
        }
        return true;
    }
    for (std::size_t level = 2; level < epsilons_.size() && level <= contexts_.size(); ++level) {
        const Rational& eps = epsilons_[level];
        OracleResult found = oracle(x, contexts_[level - 1]);
        bool added = false;
        for (const auto& c : found.candidates) {
            if (c.excess >= eps) {
                break;
            }
            Row row{indicator(c.members), Sense::GreaterEqual, (1 + eps) * c.value,
                    "level" + std::to_string(level) + ":" + c.members.to_string()};
            row.coeffs.resize(width);
            added = pool_.add_row(std::move(row)) || added;
        }
        if (added) {
            return true;
        }
        if (!found.candidates.empty() && found.candidates.front().excess < eps) {
            throw std::logic_error("level separation found a violated cut already in the pool");
        }
    }
    return false;
}

LpResult NucleonEngine::solve_lazy(const std::vector<Rational>& objective, Goal goal, RoundCuts* round)
{
    const std::size_t n = net_.player_count();
    for (;;) {
        ConstraintPool pool = pool_;
        if (round) {
            Row bound{unit(pool.variable_count(), epsilon_var()), Sense::LessEqual, sigmas_.sigma_n, "epsilon-bound"};
            pool.add_row(std::move(bound));
            for (const auto& row : round->rows) {
                pool.add_row(row);
            }
        }
        LpResult result = solve_lp(pool, objective, goal);
        if (result.status != LpStatus::Optimal) {
            throw LpError(result.status == LpStatus::Infeasible ? "round face is empty" : "round LP is unbounded");
        }
        Allocation x(result.point.begin(), result.point.begin() + static_cast<std::ptrdiff_t>(n));
        if (separate_levels(x)) {
            continue;
        }
        if (!round) {
            return result;
        }
        const Rational& eps = result.point[epsilon_var()];
        OracleResult found = oracle(x, contexts_.back());
        bool added = false;
        for (const auto& c : found.candidates) {
            if (c.excess >= eps) {
                break;
            }
            std::string key = "cut:" + c.members.to_string();
            if (pool.contains(key)) {
                throw std::logic_error("round separation found a violated cut already in the LP");
            }
            Row row{indicator(c.members), Sense::GreaterEqual, c.value, key};
            row.coeffs.resize(pool.variable_count());
            row.coeffs[epsilon_var()] = -c.value;
            round->rows.push_back(std::move(row));
            round->coalitions.push_back(c.members);
            round->values.push_back(c.value);
            added = true;
        }
        if (!added) {
            round->last_oracle = std::move(found);
            round->last_x = std::move(x);
            return result;
        }
    }
}

Range NucleonEngine::range(const std::vector<Rational>& functional)
{
    LpResult low = solve_lazy(functional, Goal::Minimize, nullptr);
    LpResult high = solve_lazy(functional, Goal::Maximize, nullptr);
    return {std::move(low.value), std::move(high.value), std::move(low.point), std::move(high.point)};
}

NucleonEngine::Context NucleonEngine::make_context(const Context* previous)
{
    const std::size_t n = net_.player_count();
    Context ctx;
    ctx.hull = affine_hull(n, [&](const std::vector<Rational>& f) {
        Range r = range(f);
        r.argmin.resize(n);
        r.argmax.resize(n);
        return r;
    });
    ctx.fixed_player.assign(n, false);
    for (std::size_t i = 0; i < n; ++i) {
        ctx.fixed_player[i] = ctx.hull.constant_on(unit(n, i));
    }
    ctx.fixed_pair.assign(pairs_.size(), false);
    for (std::size_t j = 0; j < pairs_.size(); ++j) {
        if (previous && previous->fixed_pair[j]) {
            ctx.fixed_pair[j] = true;
            continue;
        }
        std::vector<Rational> diff(pool_.variable_count());
        diff[phi_var(pairs_[j].u)] += 1;
        diff[phi_var(pairs_[j].v)] -= 1;
        ctx.fixed_pair[j] = range(diff).fixed();
    }
    ctx.arcs = net_.full_mask();
    ctx.relaxed_arcs = net_.full_mask();
    ArcMask on_fixed_jump(net_.arc_count(), false);
    for (std::size_t j = 0; j < pairs_.size(); ++j) {
        for (ArcId id : pairs_[j].jump_arcs) {
            if (ctx.fixed_pair[j]) {
                on_fixed_jump[static_cast<std::size_t>(id)] = true;
            } else {
                ctx.arcs[static_cast<std::size_t>(id)] = false;
                ctx.relaxed_arcs[static_cast<std::size_t>(id)] = false;
            }
        }
    }
    for (std::size_t i = 0; i < on_fixed_jump.size(); ++i) {
        if (on_fixed_jump[i]) {
            ctx.relaxed_arcs[i] = true;
        }
    }
    return ctx;
}

void NucleonEngine::spot_check(const Allocation& x, const OracleResult& result, const Context& ctx)
{
    const auto minimum = result.minimum();
    const std::size_t n = net_.player_count();

    if (options_.spot_samples > 0 && n >= 2 && n < 63) {
        std::mt19937_64 rng(options_.seed * 1000003ULL + static_cast<std::uint64_t>(round()));
        const std::uint64_t full = (std::uint64_t{1} << n) - 1;
        int taken = 0;
        for (int attempt = 0; attempt < options_.spot_samples * 20 && taken < options_.spot_samples; ++attempt) {
            std::uint64_t mask = rng() & full;
            if (mask == 0 || mask == full) {
                continue;
            }
            std::vector<PlayerId> members;
            for (std::size_t i = 0; i < n; ++i) {
                if (mask >> i & 1U) {
                    members.push_back(net_.players()[i]);
                }
            }
            Coalition s(std::move(members));
            int value = coalition_gamma(s);
            if (value == 0 || ctx.hull.constant_on(indicator(s))) {
                continue;
            }
            ++taken;
            ++spot_.excess_checks;
            Rational excess = (value_of(s, x) - value) / value;
            if (!minimum || excess < *minimum) {
                ++spot_.excess_failures;
            }
        }
    }

    Potential phi = potential(net_, x);
    for (std::size_t j = 0; j < pairs_.size(); ++j) {
        if (ctx.fixed_pair[j]) {
            continue;
        }
        ++spot_.potential_checks;
        Rational diff = phi.at(pairs_[j].u) - phi.at(pairs_[j].v);
        if (!minimum || diff < *minimum) {
            ++spot_.potential_failures;
        }
    }
}

bool NucleonEngine::solve_round()
{
    if (finished_) {
        return false;
    }
    const int k = round();
    if (k > static_cast<int>(net_.player_count()) + 1) {
        throw std::logic_error("nucleon recursion exceeded the round bound");
    }
    RoundCuts cuts;
    LpResult best = solve_lazy(unit(pool_.variable_count(), epsilon_var()), Goal::Maximize, &cuts);
    Rational next = best.value;
    if (next == sigmas_.sigma_n) {
        // No unfixed coalition with a positive value constrains epsilon.
        finished_ = true;
        return false;
    }
    if (next <= epsilons_.back()) {
        std::ostringstream msg;
        msg << "round " << k + 1 << " did not increase epsilon: " << to_string(next)
            << " after " << to_string(epsilons_.back());
        throw std::logic_error(msg.str());
    }
    if (cuts.last_oracle) {
        spot_check(cuts.last_x, *cuts.last_oracle, contexts_.back());
    }

    const int level = k + 1;
    std::vector<std::string> keys;
    for (std::size_t c = 0; c < cuts.coalitions.size(); ++c) {
        Row row{indicator(cuts.coalitions[c]), Sense::GreaterEqual, (1 + next) * cuts.values[c],
                "level" + std::to_string(level) + ":" + cuts.coalitions[c].to_string()};
        row.coeffs.resize(pool_.variable_count());
        keys.push_back(row.key);
        pool_.add_row(std::move(row));
    }
    epsilons_.push_back(next);

    // Cuts tight at every optimum become equalities.
    for (const auto& key : keys) {
        Row row = pool_.row(key);
        if (solve_lazy(row.coeffs, Goal::Maximize, nullptr).value == row.rhs) {
            row.sense = Sense::Equal;
            pool_.replace_row(key, std::move(row));
        }
    }

    Context ctx = make_context(&contexts_.back());
    RoundRecord record;
    record.k = level;
    record.epsilon = next;
    record.fixed_arcs = static_cast<int>(std::count(ctx.fixed_player.begin(), ctx.fixed_player.end(), true));
    record.fixed_jumps = static_cast<int>(std::count(ctx.fixed_pair.begin(), ctx.fixed_pair.end(), true));
    record.cuts = static_cast<int>(cuts.rows.size());
    transcript_.push_back(record);
    finished_ = ctx.hull.is_point();
    contexts_.push_back(std::move(ctx));
    return true;
}

NucleonOutcome nucleon(const FlowNetwork& net, const NucleonOptions& options)
{
    NucleonOutcome out;
    out.sigmas = game_sigmas(net);
    if (out.sigmas.sigma_n == 1) {
        out.core_flag = true;
        ApproxCore core = approximate_core(net, 100000);
        for (const auto& v : core.vertices) {
            out.core_vertices.push_back(scale_allocation(out.sigmas, v, Scale::Original));
        }
        out.singleton = out.core_vertices.size() == 1;
        if (out.singleton) {
            out.auxiliary = core.vertices.front();
            out.allocation = out.core_vertices.front();
        }
        return out;
    }
    NucleonEngine engine(net, options);
    while (engine.solve_round()) {
    }
    out.rounds = engine.transcript();
    out.spot = engine.spot_checks();
    out.singleton = engine.hull().is_point();
    out.auxiliary = engine.hull().point;
    out.allocation = scale_allocation(out.sigmas, out.auxiliary, Scale::Original);
    return out;
}

std::string format_round(const RoundRecord& record)
{
    std::ostringstream out;
    out << "round k=" << record.k << " epsilon=" << to_string(record.epsilon) << " fixed_arcs=" << record.fixed_arcs
        << " fixed_jumps=" << record.fixed_jumps << " cuts=" << record.cuts;
    return out.str();
}

}  // namespace flowgame
