#include "flowgame/lpexact.hpp"

#include <algorithm>

namespace flowgame {

int ConstraintPool::add_variable(std::string name)
{
    if (!rows_.empty()) {
        throw std::logic_error("variables must be declared before rows");
    }
    names_.push_back(std::move(name));
    return static_cast<int>(names_.size()) - 1;
}

bool ConstraintPool::add_row(Row row)
{
    if (row.coeffs.size() > names_.size()) {
        throw std::invalid_argument("row references undeclared variables");
    }
    if (index_.contains(row.key)) {
        return false;
    }
    row.coeffs.resize(names_.size());
    index_.emplace(row.key, rows_.size());
    rows_.push_back(std::move(row));
    return true;
}

const Row& ConstraintPool::row(const std::string& key) const
{
    auto it = index_.find(key);
    if (it == index_.end()) {
        throw std::out_of_range("no row with key " + key);
    }
    return rows_[it->second];
}

void ConstraintPool::replace_row(const std::string& key, Row row)
{
    auto it = index_.find(key);
    if (it == index_.end()) {
        throw std::out_of_range("no row with key " + key);
    }
    row.key = key;
    row.coeffs.resize(names_.size());
    rows_[it->second] = std::move(row);
}

Rational ConstraintPool::evaluate(const std::vector<Rational>& coeffs, const std::vector<Rational>& point) const
{
    Rational total = 0;
    for (std::size_t j = 0; j < coeffs.size() && j < point.size(); ++j) {
        if (sgn(coeffs[j]) != 0) {
            total += coeffs[j] * point[j];
        }
    }
    return total;
}

bool ConstraintPool::satisfies(const Row& row, const std::vector<Rational>& point) const
{
    Rational lhs = evaluate(row.coeffs, point);
    switch (row.sense) {
    case Sense::LessEqual:
        return lhs <= row.rhs;
    case Sense::Equal:
        return lhs == row.rhs;
    case Sense::GreaterEqual:
        return lhs >= row.rhs;
    }
    return false;
}

bool ConstraintPool::satisfies_all(const std::vector<Rational>& point) const
{
    return std::all_of(rows_.begin(), rows_.end(), [&](const Row& r) { return satisfies(r, point); });
}

namespace {

// Column of the dual standard form: a (possibly negated) pool row.
struct DualColumn
{
    std::size_t row;
    int sign;
};

class Tableau
{
  public:
    Tableau(std::vector<std::vector<Rational>> body, std::vector<Rational> rhs, std::size_t structural)
        : body_(std::move(body)), rhs_(std::move(rhs)), structural_(structural), basis_(rhs_.size())
    {
        for (std::size_t j = 0; j < basis_.size(); ++j) {
            basis_[j] = structural_ + j;
        }
    }

    std::size_t rows() const { return rhs_.size(); }
    std::size_t columns() const { return structural_ + rhs_.size(); }
    bool is_artificial(std::size_t k) const { return k >= structural_; }

    void set_costs(const std::vector<Rational>& cost)
    {
        cost_ = cost;
        reduced_.assign(columns(), Rational(0));
        for (std::size_t k = 0; k < columns(); ++k) {
            Rational r = cost_[k];
            for (std::size_t j = 0; j < rows(); ++j) {
                const Rational& cb = cost_[basis_[j]];
                if (sgn(cb) != 0 && sgn(body_[j][k]) != 0) {
                    r -= cb * body_[j][k];
                }
            }
            reduced_[k] = std::move(r);
        }
    }

    Rational objective() const
    {
        Rational total = 0;
        for (std::size_t j = 0; j < rows(); ++j) {
            total += cost_[basis_[j]] * rhs_[j];
        }
        return total;
    }

    /// Minimizes the current costs. Returns false if unbounded.
    bool optimize(std::size_t& pivots)
    {
        constexpr int degenerate_limit = 50;
        int degenerate_run = 0;
        bool bland = false;
        for (;;) {
            std::optional<std::size_t> entering;
            for (std::size_t k = 0; k < structural_; ++k) {
                if (sgn(reduced_[k]) >= 0) {
                    continue;
                }
                if (!entering || (!bland && reduced_[k] < reduced_[*entering])) {
                    entering = k;
                }
                if (bland) {
                    break;
                }
            }
            if (!entering) {
                return true;
            }
            std::optional<std::size_t> leaving;
            Rational best_ratio;
            for (std::size_t j = 0; j < rows(); ++j) {
                const Rational& a = body_[j][*entering];
                if (sgn(a) <= 0) {
                    continue;
                }
                Rational ratio = rhs_[j] / a;
                if (!leaving || ratio < best_ratio || (ratio == best_ratio && basis_[j] < basis_[*leaving])) {
                    leaving = j;
                    best_ratio = std::move(ratio);
                }
            }
            if (!leaving) {
                return false;
            }
            if (sgn(best_ratio) == 0) {
                if (++degenerate_run > degenerate_limit) {
                    bland = true;
                }
            } else {
                degenerate_run = 0;
            }
            pivot(*leaving, *entering);
            ++pivots;
        }
    }

    void pivot(std::size_t r, std::size_t e)
    {
        Rational p = body_[r][e];
        for (auto& a : body_[r]) {
            if (sgn(a) != 0) {
                a /= p;
            }
        }
        rhs_[r] /= p;
        for (std::size_t j = 0; j < rows(); ++j) {
            if (j == r || sgn(body_[j][e]) == 0) {
                continue;
            }
            Rational f = body_[j][e];
            for (std::size_t k = 0; k < columns(); ++k) {
                if (sgn(body_[r][k]) != 0) {
                    body_[j][k] -= f * body_[r][k];
                }
            }
            rhs_[j] -= f * rhs_[r];
        }
        if (sgn(reduced_[e]) != 0) {
            Rational f = reduced_[e];
            for (std::size_t k = 0; k < columns(); ++k) {
                if (sgn(body_[r][k]) != 0) {
                    reduced_[k] -= f * body_[r][k];
                }
            }
        }
        basis_[r] = e;
    }

    /// Pivots basic artificials out where possible; rows left with a basic
    /// artificial are linearly dependent.
    void expel_artificials(std::size_t& pivots)
    {
        for (std::size_t j = 0; j < rows(); ++j) {
            if (!is_artificial(basis_[j])) {
                continue;
            }
            for (std::size_t k = 0; k < structural_; ++k) {
                if (sgn(body_[j][k]) != 0) {
                    pivot(j, k);
                    ++pivots;
                    break;
                }
            }
        }
    }

    const Rational& reduced(std::size_t k) const { return reduced_[k]; }
    const std::vector<std::size_t>& basis() const { return basis_; }
    const Rational& rhs(std::size_t j) const { return rhs_[j]; }

  private:
    std::vector<std::vector<Rational>> body_;
    std::vector<Rational> rhs_;
    std::size_t structural_;
    std::vector<std::size_t> basis_;
    std::vector<Rational> cost_;
    std::vector<Rational> reduced_;
};

LpResult solve_without_variables(const ConstraintPool& pool)
{
    LpResult result;
    result.duals.assign(pool.row_count(), Rational(0));
    const std::vector<Rational> empty;
    result.status = pool.satisfies_all(empty) ? LpStatus::Optimal : LpStatus::Infeasible;
    result.value = 0;
    return result;
}

}  // namespace

LpResult solve_lp(const ConstraintPool& pool, const std::vector<Rational>& objective, Goal goal)
{
    const std::size_t n = pool.variable_count();
    if (objective.size() > n) {
        throw std::invalid_argument("objective references undeclared variables");
    }
    if (n == 0) {
        return solve_without_variables(pool);
    }
    std::vector<Rational> c(objective);
    c.resize(n);
    if (goal == Goal::Minimize) {
        for (auto& v : c) {
            v = -v;
        }
    }

    // Primal: max c.x subject to the pool rows. Dual: min b.y, A^T y = c, y >= 0,
    // with >= rows negated and = rows split.
    std::vector<DualColumn> columns;
    for (std::size_t i = 0; i < pool.row_count(); ++i) {
        switch (pool.rows()[i].sense) {
        case Sense::LessEqual:
            columns.push_back({i, 1});
            break;
        case Sense::GreaterEqual:
            columns.push_back({i, -1});
            break;
        case Sense::Equal:
            columns.push_back({i, 1});
            columns.push_back({i, -1});
            break;
        }
    }
    const std::size_t K = columns.size();
    std::vector<int> flip(n, 1);
    std::vector<std::vector<Rational>> body(n, std::vector<Rational>(K + n));
    std::vector<Rational> rhs(n);
    for (std::size_t j = 0; j < n; ++j) {
        flip[j] = sgn(c[j]) < 0 ? -1 : 1;
        rhs[j] = flip[j] * c[j];
        for (std::size_t k = 0; k < K; ++k) {
            const Rational& a = pool.rows()[columns[k].row].coeffs[j];
            if (sgn(a) != 0) {
                body[j][k] = flip[j] * columns[k].sign * a;
            }
        }
        body[j][K + j] = 1;
    }
    Tableau tableau(std::move(body), std::move(rhs), K);

    LpResult result;
    std::vector<Rational> phase_one(K + n, Rational(0));
    for (std::size_t j = 0; j < n; ++j) {
        phase_one[K + j] = 1;
    }
    tableau.set_costs(phase_one);
    tableau.optimize(result.pivots);
    if (sgn(tableau.objective()) > 0) {
        // The dual is infeasible, so the primal is infeasible or unbounded.
        LpResult feasibility = solve_lp(pool, std::vector<Rational>(n, Rational(0)), Goal::Maximize);
        result.status = feasibility.status == LpStatus::Infeasible ? LpStatus::Infeasible : LpStatus::Unbounded;
        result.pivots += feasibility.pivots;
        return result;
    }
    tableau.expel_artificials(result.pivots);

    std::vector<Rational> phase_two(K + n, Rational(0));
    for (std::size_t k = 0; k < K; ++k) {
        phase_two[k] = columns[k].sign * pool.rows()[columns[k].row].rhs;
    }
    tableau.set_costs(phase_two);
    if (!tableau.optimize(result.pivots)) {
        result.status = LpStatus::Infeasible;
        return result;
    }

    result.status = LpStatus::Optimal;
    result.point.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        result.point[j] = -flip[j] * tableau.reduced(K + j);
    }
    result.duals.assign(pool.row_count(), Rational(0));
    for (std::size_t j = 0; j < n; ++j) {
        std::size_t k = tableau.basis()[j];
        if (k < K) {
            result.duals[columns[k].row] += columns[k].sign * tableau.rhs(j);
        }
    }
    Rational dual_value = tableau.objective();
    Rational primal_value = pool.evaluate(c, result.point);
    if (dual_value != primal_value) {
        throw std::logic_error("simplex produced mismatched primal and dual values");
    }
    if (goal == Goal::Minimize) {
        primal_value = -primal_value;
        for (auto& y : result.duals) {
            y = -y;
        }
    }
    result.value = std::move(primal_value);
    return result;
}

LpResult solve_or_throw(const ConstraintPool& pool, const std::vector<Rational>& objective, Goal goal)
{
    LpResult result = solve_lp(pool, objective, goal);
    if (result.status == LpStatus::Infeasible) {
        throw LpError("linear program is infeasible");
    }
    if (result.status == LpStatus::Unbounded) {
        throw LpError("linear program is unbounded");
    }
    return result;
}

Range functional_range(const ConstraintPool& pool, const std::vector<Rational>& functional)
{
    LpResult low = solve_or_throw(pool, functional, Goal::Minimize);
    LpResult high = solve_or_throw(pool, functional, Goal::Maximize);
    return {std::move(low.value), std::move(high.value), std::move(low.point), std::move(high.point)};
}

bool pool_contains(const ConstraintPool& outer, const ConstraintPool& inner)
{
    if (outer.variable_count() != inner.variable_count()) {
        throw std::invalid_argument("pools have different variable layouts");
    }
    for (const Row& row : outer.rows()) {
        if (row.sense != Sense::LessEqual) {
            if (solve_or_throw(inner, row.coeffs, Goal::Minimize).value < row.rhs) {
                return false;
            }
        }
        if (row.sense != Sense::GreaterEqual) {
            if (solve_or_throw(inner, row.coeffs, Goal::Maximize).value > row.rhs) {
                return false;
            }
        }
    }
    return true;
}

}  // namespace flowgame

namespace flowgame {

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> row_reduce(std::vector<std::vector<Rational>>& rows, std::size_t dim)
{
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t col = 0; col < dim && r < rows.size(); ++col) {
        std::size_t pick = r;
        while (pick < rows.size() && sgn(rows[pick][col]) == 0) {
            ++pick;
        }
        if (pick == rows.size()) {
            continue;
        }
        std::swap(rows[r], rows[pick]);
        Rational p = rows[r][col];
        for (auto& v : rows[r]) {
            v /= p;
        }
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r || sgn(rows[i][col]) == 0) {
                continue;
            }
            Rational f = rows[i][col];
            for (std::size_t k = 0; k < dim; ++k) {
                rows[i][k] -= f * rows[r][k];
            }
        }
        pivots.push_back(col);
        ++r;
    }
    rows.resize(r);
    return pivots;
}

Rational dot(const std::vector<Rational>& a, const std::vector<Rational>& b)
{
    Rational total = 0;
    for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
        if (sgn(a[i]) != 0 && sgn(b[i]) != 0) {
            total += a[i] * b[i];
        }
    }
    return total;
}

}  // namespace

std::vector<std::vector<Rational>> null_space(const std::vector<std::vector<Rational>>& rows, std::size_t dim)
{
    std::vector<std::vector<Rational>> m;
    for (const auto& row : rows) {
        auto copy = row;
        copy.resize(dim);
        m.push_back(std::move(copy));
    }
    auto pivots = row_reduce(m, dim);
    std::vector<bool> is_pivot(dim, false);
    for (auto c : pivots) {
        is_pivot[c] = true;
    }
    std::vector<std::vector<Rational>> basis;
    for (std::size_t free = 0; free < dim; ++free) {
        if (is_pivot[free]) {
            continue;
        }
        std::vector<Rational> z(dim);
        z[free] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i) {
            z[pivots[i]] = -m[i][free];
        }
        basis.push_back(std::move(z));
    }
    return basis;
}

std::size_t matrix_rank(std::vector<std::vector<Rational>> rows)
{
    if (rows.empty()) {
        return 0;
    }
    std::size_t dim = 0;
    for (const auto& row : rows) {
        dim = std::max(dim, row.size());
    }
    for (auto& row : rows) {
        row.resize(dim);
    }
    return row_reduce(rows, dim).size();
}

bool AffineHull::constant_on(const std::vector<Rational>& functional) const
{
    return std::all_of(directions.begin(), directions.end(),
                       [&](const std::vector<Rational>& d) { return sgn(dot(functional, d)) == 0; });
}

AffineHull affine_hull(std::size_t dim, const RangeOracle& range)
{
    AffineHull hull;
    std::vector<std::vector<Rational>> constant;
    for (;;) {
        // Functionals orthogonal to every known direction but not yet known constant.
        std::optional<std::vector<Rational>> probe;
        for (auto& candidate : null_space(hull.directions, dim)) {
            auto extended = constant;
            extended.push_back(candidate);
            if (matrix_rank(extended) > constant.size()) {
                probe = std::move(candidate);
                break;
            }
        }
        if (!probe) {
            break;
        }
        Range r = range(*probe);
        if (hull.point.empty()) {
            hull.point = r.argmin;
        }
        if (r.fixed()) {
            constant.push_back(std::move(*probe));
            continue;
        }
        std::vector<Rational> d(dim);
        for (std::size_t i = 0; i < dim; ++i) {
            d[i] = r.argmax[i] - r.argmin[i];
        }
        hull.directions.push_back(std::move(d));
    }
    if (hull.point.empty()) {
        // Zero-dimensional ambient space, or nothing to probe.
        hull.point.assign(dim, Rational(0));
        if (dim > 0) {
            hull.point = range(std::vector<Rational>(dim, Rational(0))).argmin;
        }
    }
    return hull;
}

}  // namespace flowgame
