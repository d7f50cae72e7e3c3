#include "nsmooth/exact_lp.hpp"

#include <optional>
#include <stdexcept>

namespace nsmooth {

std::size_t exact_rank(RationalMatrix rows)
{
    if (rows.empty())
        return 0;
    std::size_t cols = rows.front().size();
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
        std::size_t pivot = rank;
        while (pivot < rows.size() && sgn(rows[pivot][c]) == 0)
            ++pivot;
        if (pivot == rows.size())
            continue;
        std::swap(rows[rank], rows[pivot]);
        for (std::size_t r = rank + 1; r < rows.size(); ++r) {
            if (sgn(rows[r][c]) == 0)
                continue;
            Rational factor = rows[r][c] / rows[rank][c];
            for (std::size_t k = c; k < cols; ++k)
                rows[r][k] -= factor * rows[rank][k];
        }
        ++rank;
    }
    return rank;
}

namespace {

// Tableau rows carry the rhs in the last column. The objective row stores
// reduced costs and, in its last column, minus the current objective value.
struct Tableau {
    RationalMatrix rows;
    std::vector<Rational> objective;
    std::vector<std::size_t> basis;

    std::size_t width() const { return objective.size() - 1; }

    void pivot(std::size_t r, std::size_t c)
    {
        Rational p = rows[r][c];
        for (auto& v : rows[r])
            v /= p;
        auto eliminate = [&](std::vector<Rational>& row) {
            if (sgn(row[c]) == 0)
                return;
            Rational factor = row[c];
            for (std::size_t k = 0; k < row.size(); ++k)
                row[k] -= factor * rows[r][k];
        };
        for (std::size_t i = 0; i < rows.size(); ++i)
            if (i != r)
                eliminate(rows[i]);
        eliminate(objective);
        basis[r] = c;
    }

    // Returns false when unbounded.
    bool optimize(std::size_t allowed_columns)
    {
        while (true) {
            std::optional<std::size_t> entering;
            for (std::size_t j = 0; j < allowed_columns; ++j)
                if (sgn(objective[j]) < 0) {
                    entering = j;
                    break;
                }
            if (!entering)
                return true;
            std::size_t c = *entering;
            std::optional<std::size_t> leaving;
            Rational best_ratio;
            for (std::size_t i = 0; i < rows.size(); ++i) {
                if (sgn(rows[i][c]) <= 0)
                    continue;
                Rational ratio = rows[i].back() / rows[i][c];
                if (!leaving || ratio < best_ratio || (ratio == best_ratio && basis[i] < basis[*leaving])) {
                    leaving = i;
                    best_ratio = ratio;
                }
            }
            if (!leaving)
                return false;
            pivot(*leaving, c);
        }
    }
};

}  // namespace

LpResult solve_lp(const RationalMatrix& a, const std::vector<Rational>& b, const std::vector<Rational>& c)
{
    const std::size_t m = a.size();
    const std::size_t n = c.size();
    if (b.size() != m)
        throw std::invalid_argument("solve_lp: rhs length mismatch");
    for (const auto& row : a)
        if (row.size() != n)
            throw std::invalid_argument("solve_lp: row length mismatch");

    // Phase 1: artificial variable per row, rhs made nonnegative.
    Tableau t;
    t.rows.assign(m, std::vector<Rational>(n + m + 1));
    t.objective.assign(n + m + 1, Rational(0));
    t.basis.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        bool flip = sgn(b[i]) < 0;
        for (std::size_t j = 0; j < n; ++j)
            t.rows[i][j] = flip ? Rational(-a[i][j]) : a[i][j];
        t.rows[i][n + i] = 1;
        t.rows[i].back() = flip ? Rational(-b[i]) : b[i];
        t.basis[i] = n + i;
        for (std::size_t j = 0; j < n; ++j)
            t.objective[j] -= t.rows[i][j];
        t.objective.back() -= t.rows[i].back();
    }
    t.optimize(n + m);

    LpResult result;
    if (sgn(t.objective.back()) != 0) {
        result.status = LpStatus::infeasible;
        return result;
    }

    // Drive remaining artificials out of the basis; drop redundant rows.
    for (std::size_t i = 0; i < t.rows.size();) {
        if (t.basis[i] < n) {
            ++i;
            continue;
        }
        std::optional<std::size_t> col;
        for (std::size_t j = 0; j < n; ++j)
            if (sgn(t.rows[i][j]) != 0) {
                col = j;
                break;
            }
        if (col) {
            t.pivot(i, *col);
            ++i;
        } else {
            t.rows.erase(t.rows.begin() + static_cast<std::ptrdiff_t>(i));
            t.basis.erase(t.basis.begin() + static_cast<std::ptrdiff_t>(i));
        }
    }

    // Phase 2 on the original columns only.
    for (auto& row : t.rows) {
        Rational rhs = row.back();
        row.resize(n);
        row.push_back(rhs);
    }
    t.objective.assign(n + 1, Rational(0));
    for (std::size_t j = 0; j < n; ++j)
        t.objective[j] = c[j];
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        Rational cb = c[t.basis[i]];
        if (sgn(cb) == 0)
            continue;
        for (std::size_t k = 0; k <= n; ++k)
            t.objective[k] -= cb * t.rows[i][k];
    }
    if (!t.optimize(n)) {
        result.status = LpStatus::unbounded;
        return result;
    }

    result.status = LpStatus::optimal;
    result.objective = -t.objective.back();
    result.x.assign(n, Rational(0));
    for (std::size_t i = 0; i < t.rows.size(); ++i)
        result.x[t.basis[i]] = t.rows[i].back();
    return result;
}

}  // namespace nsmooth
