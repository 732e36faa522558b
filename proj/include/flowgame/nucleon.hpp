#pragma once

#include "flowgame/coresolve.hpp"
#include "flowgame/flowcore.hpp"
#include "flowgame/lpexact.hpp"
#include "flowgame/netmodel.hpp"
#include "flowgame/pathstruct.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace flowgame {

/// One line of the round transcript.
struct RoundRecord
{
    int k = 0;
    Rational epsilon;
    int fixed_arcs = 0;
    int fixed_jumps = 0;
    int cuts = 0;  // coalition cuts generated while solving this round
};

struct SpotCheckStats
{
    int excess_checks = 0;     // sampled unfixed coalitions against the oracle minimum
    int excess_failures = 0;
    int potential_checks = 0;  // unfixed jump pairs against the oracle minimum
    int potential_failures = 0;
};

struct CriticalCoalition
{
    enum class Kind
    {
        RemovedArc,  // (N cap F) + e for paths F avoiding e
        JumpArc,     // N cap (F + representative) for paths F through an artificial u-v arc
    };
    Kind kind = Kind::RemovedArc;
    Coalition members;
    PlayerId player = 0;                  // RemovedArc: the arc's owner
    std::pair<VertexId, VertexId> pair;   // JumpArc: the jump pair
    int tau = 0;                          // number of paths in the generating family
    int value = 0;                        // auxiliary coalition value
    Rational excess;                      // relative excess at the probe point
};

struct OracleResult
{
    std::optional<CriticalCoalition> best_removed;
    std::optional<CriticalCoalition> best_jump;
    /// Every distinct unfixed candidate with positive value, by excess then members.
    std::vector<CriticalCoalition> candidates;

    /// min of the two best excesses; empty when no candidate exists.
    std::optional<Rational> minimum() const;
};

struct NucleonOptions
{
    int spot_samples = 0;  // sampled coalitions per round for the excess spot check
    std::uint64_t seed = 1;
};

/// The sequential-LP recursion on the auxiliary game. Each optimal face is
/// kept as a pool over (x, phi, epsilon) whose coalition cuts are generated
/// lazily by the path oracles, level by level.
class NucleonEngine
{
  public:
    /// Builds the base system, the jump pairs and the first optimal face (the
    /// auxiliary core).
    explicit NucleonEngine(const FlowNetwork& net, NucleonOptions options = {});

    int round() const { return static_cast<int>(contexts_.size()) - 1; }
    const Rational& epsilon() const { return epsilons_.back(); }
    const GameSigmas& sigmas() const { return sigmas_; }
    const BaseSystem& base() const { return base_; }
    const std::vector<JumpPair>& jump_pairs() const { return pairs_; }

    std::vector<PlayerId> fixed_players() const;
    std::vector<JumpPair> fixed_pairs() const;
    /// Arc set of the auxiliary network for the current round.
    const ArcMask& auxiliary_arcs() const { return contexts_.back().arcs; }
    /// Affine hull of the current face projected to the allocation coordinates.
    const AffineHull& hull() const { return contexts_.back().hull; }

    /// True once the face is a single point or no unfixed coalition has a
    /// positive value.
    bool finished() const { return finished_; }

    /// Solves the next round. Returns false if the recursion had already ended
    /// or ends without a new round.
    bool solve_round();

    /// Critical coalitions at x with respect to the current round's fixed sets.
    OracleResult separation_oracle(const Allocation& x) const;

    /// Range of a functional over the current face; coefficients follow the
    /// pool layout (players, then vertices).
    Range range(const std::vector<Rational>& functional);

    std::size_t x_var(int player_index) const { return static_cast<std::size_t>(player_index); }
    std::size_t phi_var(VertexId v) const { return net_.player_count() + static_cast<std::size_t>(v); }
    std::size_t epsilon_var() const { return net_.player_count() + net_.vertex_count(); }

    const ConstraintPool& pool() const { return pool_; }
    const std::vector<RoundRecord>& transcript() const { return transcript_; }
    const SpotCheckStats& spot_checks() const { return spot_; }

    int coalition_gamma(const Coalition& s) const;

  private:
    struct Context
    {
        std::vector<bool> fixed_player;
        std::vector<bool> fixed_pair;
        ArcMask arcs;          // E minus every arc on a jump of an unfixed pair
        ArcMask relaxed_arcs;  // keeps the arcs that also lie on a jump of a fixed pair
        AffineHull hull;
    };

    struct RoundCuts
    {
        std::vector<Row> rows;
        std::vector<Coalition> coalitions;
        std::vector<int> values;
        std::optional<OracleResult> last_oracle;
        Allocation last_x;
    };

    OracleResult oracle(const Allocation& x, const Context& ctx) const;
    LpResult solve_lazy(const std::vector<Rational>& objective, Goal goal, RoundCuts* round);
    bool separate_levels(const Allocation& x);
    Context make_context(const Context* previous);
    void spot_check(const Allocation& x, const OracleResult& result, const Context& ctx);
    std::vector<Rational> indicator(const Coalition& s) const;
    Rational value_of(const Coalition& s, const Allocation& x) const;

    FlowNetwork net_;
    NucleonOptions options_;
    GameSigmas sigmas_;
    BaseSystem base_;
    std::vector<JumpPair> pairs_;
    ConstraintPool pool_;
    std::vector<Context> contexts_;   // index k: the face after round k; index 0 unused
    std::vector<Rational> epsilons_;  // index k: epsilon_k
    std::vector<RoundRecord> transcript_;
    SpotCheckStats spot_;
    bool finished_ = false;
    mutable std::map<Coalition, int> gamma_cache_;
};

struct NucleonOutcome
{
    GameSigmas sigmas;
    bool core_flag = false;  // sigma_N = 1: the nucleon is the whole core
    bool singleton = false;
    Allocation allocation;  // original scale
    Allocation auxiliary;   // auxiliary scale
    std::vector<Allocation> core_vertices;  // core_flag only
    std::vector<RoundRecord> rounds;
    SpotCheckStats spot;
};

NucleonOutcome nucleon(const FlowNetwork& net, const NucleonOptions& options = {});

/// Allocation and potential rows describing the auxiliary core, over the
/// variables (x per player, phi per vertex).
ConstraintPool core_pool(const FlowNetwork& net);

std::string format_round(const RoundRecord& record);

}  // namespace flowgame
