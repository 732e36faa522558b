#pragma once

#include "flowgame/rational.hpp"

#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace flowgame {

enum class Sense
{
    LessEqual,
    Equal,
    GreaterEqual,
};

/// coeffs . vars (sense) rhs, with dense coefficients over the pool variables.
struct Row
{
    std::vector<Rational> coeffs;
    Sense sense = Sense::GreaterEqual;
    Rational rhs;
    std::string key;  // provenance; unique within a pool
};

/// A finite system of linear rows over named free variables. Rows are keyed by
/// provenance so cutting-plane loops cannot add the same cut twice.
class ConstraintPool
{
  public:
    int add_variable(std::string name);
    std::size_t variable_count() const { return names_.size(); }
    const std::string& variable_name(int index) const { return names_.at(static_cast<std::size_t>(index)); }

    /// Returns false (and leaves the pool unchanged) if the key is taken.
    /// Short coefficient vectors are padded with zeros.
    bool add_row(Row row);
    bool contains(const std::string& key) const { return index_.contains(key); }
    const Row& row(const std::string& key) const;
    const std::vector<Row>& rows() const { return rows_; }
    std::size_t row_count() const { return rows_.size(); }

    /// Replaces the row under `key` in place, keeping its position.
    void replace_row(const std::string& key, Row row);

    Rational evaluate(const std::vector<Rational>& coeffs, const std::vector<Rational>& point) const;
    bool satisfies(const Row& row, const std::vector<Rational>& point) const;
    bool satisfies_all(const std::vector<Rational>& point) const;

  private:
    std::vector<std::string> names_;
    std::vector<Row> rows_;
    std::unordered_map<std::string, std::size_t> index_;
};

enum class Goal
{
    Maximize,
    Minimize,
};

enum class LpStatus
{
    Optimal,
    Infeasible,
    Unbounded,
};

struct LpResult
{
    LpStatus status = LpStatus::Infeasible;
    Rational value;
    std::vector<Rational> point;
    /// Row multipliers y with objective = sum y_i * row_i and value = sum y_i * rhs_i.
    /// For Maximize, y_i >= 0 on <= rows and y_i <= 0 on >= rows; signs flip for Minimize.
    std::vector<Rational> duals;
    std::size_t pivots = 0;
};

/// Exact simplex on the dual of the pool. Variables are free; bounds must be
/// rows. Deterministic: Dantzig pricing with smallest-index ties, switching to
/// Bland's rule after a run of degenerate pivots.
LpResult solve_lp(const ConstraintPool& pool, const std::vector<Rational>& objective, Goal goal);

class LpError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

struct Range
{
    Rational min;
    Rational max;
    std::vector<Rational> argmin;
    std::vector<Rational> argmax;

    bool fixed() const { return min == max; }
};

/// [min, max] of a functional over the pool. Throws LpError when the pool is
/// infeasible or the functional is unbounded in either direction.
Range functional_range(const ConstraintPool& pool, const std::vector<Rational>& functional);

/// Optimal value; throws LpError unless the LP has a finite optimum.
LpResult solve_or_throw(const ConstraintPool& pool, const std::vector<Rational>& objective, Goal goal);

/// True iff every point of `inner` satisfies every row of `outer`. Both pools
/// must share the variable layout; `inner` must be feasible and bounded.
bool pool_contains(const ConstraintPool& outer, const ConstraintPool& inner);

/// Basis of {z : row . z = 0 for every row} in `dim` coordinates.
std::vector<std::vector<Rational>> null_space(const std::vector<std::vector<Rational>>& rows, std::size_t dim);

std::size_t matrix_rank(std::vector<std::vector<Rational>> rows);

struct AffineHull
{
    std::vector<Rational> point;
    std::vector<std::vector<Rational>> directions;  // a basis of the direction space

    bool is_point() const { return directions.empty(); }
    /// True iff the functional takes one value on the whole set.
    bool constant_on(const std::vector<Rational>& functional) const;
};

/// Range of a functional over some polytope, with optimal points.
using RangeOracle = std::function<Range(const std::vector<Rational>&)>;

/// Affine hull of a nonempty polytope in `dim` coordinates, found with at most
/// `dim` range queries: each query either adds a direction or a functional
/// known to be constant.
AffineHull affine_hull(std::size_t dim, const RangeOracle& range);

struct VertexEnumeration
{
    std::vector<std::vector<Rational>> vertices;  // ascending lexicographic
    bool bounded = true;
};

/// Vertices of {z >= 0 : pool rows} by the double-description method on the
/// homogenized cone. Nonnegativity of every variable is imposed implicitly.
VertexEnumeration enumerate_vertices(const ConstraintPool& pool);

}  // namespace flowgame
