#include "flowgame/reforacle.hpp"

#include "flowgame/coresolve.hpp"
#include "flowgame/flowcore.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <deque>
#include <map>

namespace flowgame {

namespace {

using Mask = std::uint32_t;

void guard_players(const FlowNetwork& net, std::size_t limit, const char* what)
{
    if (net.player_count() > limit) {
        throw SizeGuardError(std::string(what) + " needs at most " + std::to_string(limit) + " players, got " +
                             std::to_string(net.player_count()));
    }
}

Coalition coalition_of(const FlowNetwork& net, Mask mask)
{
    std::vector<PlayerId> members;
    for (std::size_t i = 0; i < net.player_count(); ++i) {
        if (mask >> i & 1U) {
            members.push_back(net.players()[i]);
        }
    }
    return Coalition(std::move(members));
}

std::vector<Rational> indicator(std::size_t width, Mask mask)
{
    std::vector<Rational> v(width);
    for (std::size_t i = 0; i < width; ++i) {
        if (mask >> i & 1U) {
            v[i] = 1;
        }
    }
    return v;
}

Rational sum_over(const Allocation& x, Mask mask)
{
    Rational total = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (mask >> i & 1U) {
            total += x[i];
        }
    }
    return total;
}

// True if dropping some member keeps the value, so the row for `mask` is
// implied by the smaller coalition's row together with x >= 0.
bool dominated(Mask mask, const std::vector<int>& gamma, const std::vector<bool>* admissible = nullptr)
{
    for (Mask rest = mask; rest != 0; rest &= rest - 1) {
        Mask smaller = mask & ~(rest & -rest);
        if (smaller != 0 && gamma[smaller] == gamma[mask] && (!admissible || (*admissible)[smaller])) {
            return true;
        }
    }
    return false;
}

ConstraintPool allocation_pool(const FlowNetwork& net, const Rational& total, bool with_epsilon)
{
    ConstraintPool pool;
    for (PlayerId p : net.players()) {
        pool.add_variable("x" + std::to_string(p));
    }
    if (with_epsilon) {
        pool.add_variable("epsilon");
    }
    const std::size_t n = net.player_count();
    for (std::size_t i = 0; i < n; ++i) {
        Row row{std::vector<Rational>(pool.variable_count()), Sense::GreaterEqual, 0, "nonneg:" + std::to_string(i)};
        row.coeffs[i] = 1;
        pool.add_row(std::move(row));
    }
    Row grand{std::vector<Rational>(pool.variable_count()), Sense::Equal, total, "grand"};
    for (std::size_t i = 0; i < n; ++i) {
        grand.coeffs[i] = 1;
    }
    pool.add_row(std::move(grand));
    return pool;
}

AffineHull hull_of(const ConstraintPool& pool, std::size_t dim)
{
    return affine_hull(dim, [&](const std::vector<Rational>& f) {
        Range r = functional_range(pool, f);
        r.argmin.resize(dim);
        r.argmax.resize(dim);
        return r;
    });
}

bool st_connected(const FlowNetwork& net, const ArcMask& removed)
{
    std::vector<bool> seen(net.vertex_count(), false);
    std::deque<VertexId> queue{net.source()};
    seen[static_cast<std::size_t>(net.source())] = true;
    while (!queue.empty()) {
        VertexId v = queue.front();
        queue.pop_front();
        if (v == net.sink()) {
            return true;
        }
        for (ArcId id : net.out_arcs(v)) {
            VertexId w = net.arc(id).head;
            if (!removed[static_cast<std::size_t>(id)] && !seen[static_cast<std::size_t>(w)]) {
                seen[static_cast<std::size_t>(w)] = true;
                queue.push_back(w);
            }
        }
    }
    return false;
}

}  // namespace

std::vector<int> all_coalition_values(const FlowNetwork& net)
{
    guard_players(net, max_players_for_enumeration, "coalition enumeration");
    const std::size_t n = net.player_count();
    std::vector<int> gamma(std::size_t{1} << n, 0);
    for (Mask mask = 1; mask < gamma.size(); ++mask) {
        gamma[mask] = coalition_value(net, coalition_of(net, mask)).value;
    }
    return gamma;
}

Rational brute_epsilon_star(const FlowNetwork& net)
{
    auto gamma = all_coalition_values(net);
    const std::size_t n = net.player_count();
    const Mask full = static_cast<Mask>(gamma.size() - 1);
    ConstraintPool pool = allocation_pool(net, gamma[full], true);
    for (Mask mask = 1; mask <= full; ++mask) {
        if (gamma[mask] == 0 || dominated(mask, gamma)) {
            continue;
        }
        Row row{indicator(n + 1, mask), Sense::GreaterEqual, gamma[mask], "coalition:" + std::to_string(mask)};
        row.coeffs[n] = -gamma[mask];
        pool.add_row(std::move(row));
    }
    std::vector<Rational> objective(n + 1);
    objective[n] = 1;
    return solve_or_throw(pool, objective, Goal::Maximize).value;
}

std::vector<ExcessEntry> excess_vector(const FlowNetwork& net, const Allocation& x)
{
    auto gamma = all_coalition_values(net);
    const Mask full = static_cast<Mask>(gamma.size() - 1);
    std::vector<ExcessEntry> entries;
    for (Mask mask = 1; mask < full; ++mask) {
        ExcessEntry entry{coalition_of(net, mask), std::nullopt};
        if (gamma[mask] > 0) {
            entry.excess = (sum_over(x, mask) - gamma[mask]) / gamma[mask];
        }
        entries.push_back(std::move(entry));
    }
    std::sort(entries.begin(), entries.end(), [](const ExcessEntry& a, const ExcessEntry& b) {
        if (a.excess.has_value() != b.excess.has_value()) {
            return a.excess.has_value();
        }
        if (a.excess && *a.excess != *b.excess) {
            return *a.excess < *b.excess;
        }
        return a.coalition < b.coalition;
    });
    return entries;
}

int brute_sigma(const FlowNetwork& net, const ArcMask& constraint)
{
    if (net.arc_count() > max_arcs_for_brute_sigma) {
        throw SizeGuardError("exhaustive sigma needs at most " + std::to_string(max_arcs_for_brute_sigma) +
                             " arcs, got " + std::to_string(net.arc_count()));
    }
    // Path families: only the constrained arcs of each path matter.
    std::vector<Mask> masks;
    for (const Path& path : enumerate_st_paths(net, 100000)) {
        Mask m = 0;
        for (ArcId id : path) {
            if (constraint[static_cast<std::size_t>(id)]) {
                m |= Mask{1} << id;
            }
        }
        if (m == 0) {
            throw UnboundedSigmaError(path);
        }
        masks.push_back(m);
    }
    std::sort(masks.begin(), masks.end());
    masks.erase(std::unique(masks.begin(), masks.end()), masks.end());
    int best_family = 0;
    auto pack = [&](auto&& self, std::size_t from, Mask used, int count) -> void {
        best_family = std::max(best_family, count);
        for (std::size_t i = from; i < masks.size(); ++i) {
            if ((masks[i] & used) == 0) {
                self(self, i + 1, used | masks[i], count + 1);
            }
        }
    };
    pack(pack, 0, 0, 0);

    // Smallest subset of the constraint set whose removal disconnects t from s.
    const std::size_t m = net.arc_count();
    int best_cut = -1;
    for (Mask subset = 0; subset < (Mask{1} << m); ++subset) {
        bool inside = true;
        ArcMask removed(m, false);
        for (std::size_t i = 0; i < m; ++i) {
            if (subset >> i & 1U) {
                inside = inside && constraint[i];
                removed[i] = true;
            }
        }
        int size = std::popcount(subset);
        if (!inside || (best_cut >= 0 && size >= best_cut)) {
            continue;
        }
        if (!st_connected(net, removed)) {
            best_cut = size;
        }
    }
    if (best_cut != best_family) {
        throw std::logic_error("exhaustive path packing " + std::to_string(best_family) +
                               " differs from exhaustive constrained cut " + std::to_string(best_cut));
    }
    return best_family;
}

bool brute_core_membership(const FlowNetwork& net, const Allocation& x)
{
    auto gamma = all_coalition_values(net);
    const Mask full = static_cast<Mask>(gamma.size() - 1);
    if (x.size() != net.player_count()) {
        return false;
    }
    if (std::any_of(x.begin(), x.end(), [](const Rational& v) { return sgn(v) < 0; })) {
        return false;
    }
    if (sum_over(x, full) != sigma(net, net.private_mask())) {
        return false;
    }
    for (Mask mask = 1; mask < full; ++mask) {
        if (sum_over(x, mask) < gamma[mask]) {
            return false;
        }
    }
    return true;
}

ConstraintPool brute_core_pool(const FlowNetwork& net)
{
    auto gamma = all_coalition_values(net);
    const std::size_t n = net.player_count();
    const Mask full = static_cast<Mask>(gamma.size() - 1);
    ConstraintPool pool = allocation_pool(net, sigma(net, net.private_mask()), false);
    for (Mask mask = 1; mask < full; ++mask) {
        if (gamma[mask] == 0 || dominated(mask, gamma)) {
            continue;
        }
        pool.add_row({indicator(n, mask), Sense::GreaterEqual, gamma[mask], "coalition:" + std::to_string(mask)});
    }
    return pool;
}

BruteNucleon brute_nucleon(const FlowNetwork& net)
{
    guard_players(net, max_players_for_brute_nucleon, "brute-force nucleon");
    GameSigmas sigmas = game_sigmas(net);
    BruteNucleon out;
    if (sigmas.sigma_n == 1) {
        out.core_flag = true;
        out.core = brute_core_pool(net);
        for (const auto& v : enumerate_vertices(out.core).vertices) {
            out.core_vertices.push_back(scale_allocation(sigmas, v, Scale::Original));
        }
        out.singleton = out.core_vertices.size() == 1;
        if (out.singleton) {
            out.auxiliary = out.core_vertices.front();
            out.allocation = out.core_vertices.front();
        }
        return out;
    }

    auto gamma = all_coalition_values(net);
    const std::size_t n = net.player_count();
    const Mask full = static_cast<Mask>(gamma.size() - 1);
    gamma[full] = sigmas.sigma_n;  // auxiliary game

    ConstraintPool face = allocation_pool(net, sigmas.sigma_n, false);
    AffineHull hull = hull_of(face, n);
    for (std::size_t k = 0; !hull.is_point(); ++k) {
        if (k > n + 1) {
            throw std::logic_error("brute-force recursion exceeded the round bound");
        }
        std::vector<bool> unfixed(gamma.size(), false);
        bool any = false;
        for (Mask mask = 1; mask < full; ++mask) {
            unfixed[mask] = gamma[mask] > 0 && !hull.constant_on(indicator(n, mask));
            any = any || unfixed[mask];
        }
        if (!any) {
            break;
        }
        std::vector<Mask> active;
        for (Mask mask = 1; mask < full; ++mask) {
            if (unfixed[mask] && !dominated(mask, gamma, &unfixed)) {
                active.push_back(mask);
            }
        }

        ConstraintPool lp;
        for (std::size_t j = 0; j < n; ++j) {
            lp.add_variable(face.variable_name(static_cast<int>(j)));
        }
        lp.add_variable("epsilon");
        for (const Row& row : face.rows()) {
            Row wide = row;
            wide.coeffs.resize(n + 1);
            lp.add_row(std::move(wide));
        }
        for (Mask mask : active) {
            Row row{indicator(n + 1, mask), Sense::GreaterEqual, gamma[mask], "cut:" + std::to_string(mask)};
            row.coeffs[n] = -gamma[mask];
            lp.add_row(std::move(row));
        }
        std::vector<Rational> objective(n + 1);
        objective[n] = 1;
        Rational eps = solve_or_throw(lp, objective, Goal::Maximize).value;
        out.epsilons.push_back(eps);

        for (Mask mask : active) {
            face.add_row({indicator(n, mask), Sense::GreaterEqual, (1 + eps) * gamma[mask],
                          "round" + std::to_string(k + 1) + ":" + std::to_string(mask)});
        }
        hull = hull_of(face, n);
    }
    out.singleton = hull.is_point();
    out.auxiliary = hull.point;
    out.allocation = scale_allocation(sigmas, out.auxiliary, Scale::Original);
    return out;
}

std::vector<Path> enumerate_st_paths(const FlowNetwork& net, std::size_t limit)
{
    std::vector<Path> paths;
    Path stack;
    std::vector<bool> on_path(net.vertex_count(), false);
    auto dfs = [&](auto&& self, VertexId v) -> void {
        if (v == net.sink()) {
            if (paths.size() >= limit) {
                throw SizeGuardError("more than " + std::to_string(limit) + " s-t paths");
            }
            paths.push_back(stack);
            return;
        }
        on_path[static_cast<std::size_t>(v)] = true;
        for (ArcId id : net.out_arcs(v)) {
            VertexId w = net.arc(id).head;
            if (!on_path[static_cast<std::size_t>(w)]) {
                stack.push_back(id);
                self(self, w);
                stack.pop_back();
            }
        }
        on_path[static_cast<std::size_t>(v)] = false;
    };
    dfs(dfs, net.source());
    return paths;
}

std::vector<Path> enumerate_cycles(const FlowNetwork& net, std::size_t limit)
{
    std::vector<Path> cycles;
    Path stack;
    std::vector<bool> on_path(net.vertex_count(), false);
    for (VertexId start = 0; static_cast<std::size_t>(start) < net.vertex_count(); ++start) {
        auto dfs = [&](auto&& self, VertexId v) -> void {
            on_path[static_cast<std::size_t>(v)] = true;
            for (ArcId id : net.out_arcs(v)) {
                VertexId w = net.arc(id).head;
                if (w == start) {
                    if (cycles.size() >= limit) {
                        throw SizeGuardError("more than " + std::to_string(limit) + " cycles");
                    }
                    stack.push_back(id);
                    cycles.push_back(stack);
                    stack.pop_back();
                } else if (w > start && !on_path[static_cast<std::size_t>(w)]) {
                    stack.push_back(id);
                    self(self, w);
                    stack.pop_back();
                }
            }
            on_path[static_cast<std::size_t>(v)] = false;
        };
        dfs(dfs, start);
    }
    return cycles;
}

}  // namespace flowgame
