#include "kcollapse/lp.hpp"

#include "kcollapse/errors.hpp"

namespace kcollapse {

namespace {

constexpr double kPivotEps = 1e-11;

inline bool positive(const Rational& x) { return sgn(x) > 0; }
inline bool positive(double x) { return x > kPivotEps; }
inline bool negative(const Rational& x) { return sgn(x) < 0; }
inline bool negative(double x) { return x < -kPivotEps; }
inline bool nonzero(const Rational& x) { return sgn(x) != 0; }
inline bool nonzero(double x) { return std::fabs(x) > kPivotEps; }

template <Scalar T>
struct Tableau
{
    std::size_t rows = 0;
    std::size_t cols = 0; // structural columns, rhs stored separately
    std::vector<Vec<T>> a;
    Vec<T> rhs;
    Vec<T> obj; // reduced costs z_j - c_j for a maximization
    T obj_value = T(0);
    std::vector<std::size_t> basis;

    void pivot(std::size_t r, std::size_t c)
    {
        T inv = T(1) / a[r][c];
        for (std::size_t j = 0; j < cols; ++j) {
            a[r][j] *= inv;
        }
        rhs[r] *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || !nonzero(a[i][c])) {
                continue;
            }
            T f = a[i][c];
            for (std::size_t j = 0; j < cols; ++j) {
                a[i][j] -= f * a[r][j];
            }
            rhs[i] -= f * rhs[r];
            a[i][c] = T(0);
        }
        if (nonzero(obj[c])) {
            T f = obj[c];
            for (std::size_t j = 0; j < cols; ++j) {
                obj[j] -= f * a[r][j];
            }
            obj_value -= f * rhs[r];
            obj[c] = T(0);
        }
        basis[r] = c;
    }

    // Sets the objective row for "maximize c·x" given the current basis.
    void load_objective(const Vec<T>& c)
    {
        obj.assign(cols, T(0));
        obj_value = T(0);
        for (std::size_t j = 0; j < cols; ++j) {
            obj[j] = -c[j];
        }
        for (std::size_t i = 0; i < rows; ++i) {
            const T& cb = c[basis[i]];
            if (!nonzero(cb)) {
                continue;
            }
            for (std::size_t j = 0; j < cols; ++j) {
                obj[j] += cb * a[i][j];
            }
            obj_value += cb * rhs[i];
        }
    }

    // Returns false when unbounded. Columns with allowed[j] == false never enter.
    bool optimize(const std::vector<bool>& allowed)
    {
        for (;;) {
            std::size_t enter = cols;
            for (std::size_t j = 0; j < cols; ++j) {
                if (allowed[j] && negative(obj[j])) {
                    enter = j;
                    break;
                }
            }
            if (enter == cols) {
                return true;
            }
            std::size_t leave = rows;
            T best_ratio = T(0);
            for (std::size_t i = 0; i < rows; ++i) {
                if (!positive(a[i][enter])) {
                    continue;
                }
                T ratio = rhs[i] / a[i][enter];
                if (leave == rows || ratio < best_ratio || (ratio == best_ratio && basis[i] < basis[leave])) {
                    leave = i;
                    best_ratio = ratio;
                }
            }
            if (leave == rows) {
                return false;
            }
            pivot(leave, enter);
        }
    }
};

} // namespace

template <Scalar T>
LpResult<T> solve_lp(const LinearProgram<T>& lp)
{
    const std::size_t n = lp.num_vars;
    if (lp.objective.size() != n || lp.free_var.size() != n) {
        throw UsageError("linear program: objective/variable size mismatch");
    }
    // Column layout: one column per non-negative variable, two per free variable,
    // then one slack per inequality, then one artificial per row.
    std::vector<std::size_t> pos_col(n), neg_col(n, static_cast<std::size_t>(-1));
    std::size_t col = 0;
    for (std::size_t j = 0; j < n; ++j) {
        pos_col[j] = col++;
        if (lp.free_var[j]) {
            neg_col[j] = col++;
        }
    }
    const std::size_t structural = col;
    std::size_t slack_count = 0;
    for (const auto& c : lp.constraints) {
        if (c.coeffs.size() != n) {
            throw UsageError("linear program: constraint length mismatch");
        }
        if (c.rel != Relation::Equal) {
            ++slack_count;
        }
    }
    const std::size_t m = lp.constraints.size();
    const std::size_t art_start = structural + slack_count;
    Tableau<T> tab;
    tab.rows = m;
    tab.cols = art_start + m;
    tab.a.assign(m, Vec<T>(tab.cols, T(0)));
    tab.rhs.assign(m, T(0));
    tab.basis.assign(m, 0);

    std::size_t slack = structural;
    for (std::size_t i = 0; i < m; ++i) {
        const auto& c = lp.constraints[i];
        bool flip = negative(c.rhs);
        T sgn_mult = flip ? T(-1) : T(1);
        for (std::size_t j = 0; j < n; ++j) {
            T v = c.coeffs[j] * sgn_mult;
            tab.a[i][pos_col[j]] = v;
            if (lp.free_var[j]) {
                tab.a[i][neg_col[j]] = -v;
            }
        }
        tab.rhs[i] = c.rhs * sgn_mult;
        if (c.rel != Relation::Equal) {
            T s = (c.rel == Relation::LessEq) ? T(1) : T(-1);
            tab.a[i][slack++] = s * sgn_mult;
        }
        tab.a[i][art_start + i] = T(1);
        tab.basis[i] = art_start + i;
    }

    // Phase 1: maximize -(sum of artificials).
    Vec<T> phase1(tab.cols, T(0));
    for (std::size_t i = 0; i < m; ++i) {
        phase1[art_start + i] = T(-1);
    }
    tab.load_objective(phase1);
    std::vector<bool> allowed(tab.cols, true);
    tab.optimize(allowed);

    LpResult<T> result;
    if (negative(tab.obj_value)) {
        result.status = LpStatus::Infeasible;
        return result;
    }
    // Drive remaining artificials out of the basis where possible.
    for (std::size_t i = 0; i < m; ++i) {
        if (tab.basis[i] < art_start) {
            continue;
        }
        for (std::size_t j = 0; j < art_start; ++j) {
            if (nonzero(tab.a[i][j])) {
                tab.pivot(i, j);
                break;
            }
        }
    }
    for (std::size_t j = art_start; j < tab.cols; ++j) {
        allowed[j] = false;
    }

    Vec<T> phase2(tab.cols, T(0));
    for (std::size_t j = 0; j < n; ++j) {
        phase2[pos_col[j]] = lp.objective[j];
        if (lp.free_var[j]) {
            phase2[neg_col[j]] = -lp.objective[j];
        }
    }
    tab.load_objective(phase2);
    if (!tab.optimize(allowed)) {
        result.status = LpStatus::Unbounded;
        return result;
    }

    Vec<T> values(tab.cols, T(0));
    for (std::size_t i = 0; i < m; ++i) {
        values[tab.basis[i]] = tab.rhs[i];
    }
    result.status = LpStatus::Optimal;
    result.value = tab.obj_value;
    result.x.assign(n, T(0));
    for (std::size_t j = 0; j < n; ++j) {
        result.x[j] = values[pos_col[j]];
        if (lp.free_var[j]) {
            result.x[j] -= values[neg_col[j]];
        }
    }
    return result;
}

template LpResult<Rational> solve_lp(const LinearProgram<Rational>&);
template LpResult<double> solve_lp(const LinearProgram<double>&);

} // namespace kcollapse
