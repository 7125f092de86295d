#pragma once

#include <cstddef>
#include <vector>

#include "kcollapse/scalar.hpp"

namespace kcollapse {

enum class Relation { LessEq, Equal, GreaterEq };

template <Scalar T>
struct LinearConstraint
{
    Vec<T> coeffs;
    Relation rel = Relation::LessEq;
    T rhs = T(0);
};

/// maximize objective·x subject to the constraints; each variable is either
/// non-negative (default) or free.
template <Scalar T>
struct LinearProgram
{
    std::size_t num_vars = 0;
    Vec<T> objective;
    std::vector<LinearConstraint<T>> constraints;
    std::vector<bool> free_var;

    explicit LinearProgram(std::size_t n) : num_vars(n), objective(n, T(0)), free_var(n, false) {}

    void add(Vec<T> coeffs, Relation rel, T rhs)
    {
        constraints.push_back({std::move(coeffs), rel, std::move(rhs)});
    }
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

template <Scalar T>
struct LpResult
{
    LpStatus status = LpStatus::Infeasible;
    T value = T(0);
    Vec<T> x;
};

/// Dense two-phase simplex with Bland's rule (so it never cycles). Exact over
/// rationals; the double instantiation uses an internal pivot tolerance.
template <Scalar T>
LpResult<T> solve_lp(const LinearProgram<T>& lp);

} // namespace kcollapse
