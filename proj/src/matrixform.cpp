#include "kcollapse/matrixform.hpp"

#include "kcollapse/combinatorics.hpp"
#include "kcollapse/errors.hpp"

namespace kcollapse {

template <Scalar T>
Matrix<T> gram_from_family(const VectorFamily<T>& family)
{
    const std::size_t m = family.size();
    std::vector<Vec<T>> duals;
    duals.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
        if (is_zero_vector(family[i])) {
            throw UsageError("vector " + std::to_string(i + 1) + " is zero and has no dual unit vector");
        }
        duals.push_back(dual_unit_vector(family.space(), family[i]));
    }
    Matrix<T> a(m, m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            a(i, j) = dot(duals[i], family[j]);
        }
    }
    return a;
}

template <Scalar T>
VectorFamily<T> family_from_matrix(const Matrix<T>& a, std::size_t d)
{
    if (!a.square() || a.rows() == 0) {
        throw UsageError("family_from_matrix needs a nonempty square matrix");
    }
    const std::size_t r = rank_of(a);
    if (r > d) {
        throw UsageError("matrix rank " + std::to_string(r) + " exceeds the dimension " + std::to_string(d));
    }
    std::vector<Vec<T>> cols;
    cols.reserve(a.cols());
    for (std::size_t j = 0; j < a.cols(); ++j) {
        cols.push_back(a.col(j));
    }
    return VectorFamily<T>(NormSpace::linf(a.rows()), std::move(cols));
}

template <Scalar T>
Matrix<T> row_normalize(const Matrix<T>& a)
{
    if (!a.square()) {
        throw UsageError("row_normalize needs a square matrix");
    }
    const std::size_t m = a.rows();
    for (std::size_t i = 0; i < m; ++i) {
        if (!leq(T(1), a(i, i))) {
            throw PreconditionError("diagonal entry " + std::to_string(i + 1) + " is below 1");
        }
        for (std::size_t j = 0; j < m; ++j) {
            if (j != i && less(T(1), abs_of(a(i, j)))) {
                throw PreconditionError("off-diagonal entry (" + std::to_string(i + 1) + ", " + std::to_string(j + 1) +
                                        ") exceeds 1 in absolute value");
            }
        }
    }
    Matrix<T> out(a);
    for (std::size_t i = 0; i < m; ++i) {
        T inv = T(1) / a(i, i);
        for (std::size_t j = 0; j < m; ++j) {
            out(i, j) *= inv;
        }
    }
    return out;
}

template <Scalar T>
std::size_t matrix_rank(const Matrix<T>& a)
{
    return rank_of(a);
}

template <Scalar T>
RankCertificate<T> rank_certificate(const Matrix<T>& a)
{
    if (!a.square()) {
        throw UsageError("rank certificates need a square matrix");
    }
    const std::size_t n = a.rows();
    RankCertificate<T> c;
    for (std::size_t i = 0; i < n; ++i) {
        c.trace += a(i, i);
        for (std::size_t j = 0; j < n; ++j) {
            c.frobenius_sq += a(i, j) * a(i, j);
        }
    }
    c.rank = rank_of(a);
    if (!is_zero(c.frobenius_sq)) {
        c.rank_lower_bound = c.trace * c.trace / c.frobenius_sq;
    }
    const T rank_t = from_int<T>(static_cast<long>(c.rank));
    if constexpr (is_exact_v<T>) {
        if (c.rank_lower_bound > rank_t) {
            throw InvariantError("trace bound exceeds the rank");
        }
    } else {
        if (c.rank_lower_bound > rank_t * (1.0 + kFloatTolerance) + kFloatTolerance) {
            throw InvariantError("trace bound exceeds the rank beyond the float tolerance");
        }
    }

    c.symmetric = true;
    for (std::size_t i = 0; i < n && c.symmetric; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (!approx_equal(a(i, j), a(j, i))) {
                c.symmetric = false;
                break;
            }
        }
    }
    // For symmetric A, "all nonzero eigenvalues equal c" is A^2 = cA with c = trace/rank.
    bool pattern = false;
    if (c.rank == 0) {
        pattern = true;
    } else if (c.symmetric) {
        T scale = c.trace / rank_t;
        Matrix<T> sq = a * a;
        pattern = true;
        for (std::size_t i = 0; i < n && pattern; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                T target = scale * a(i, j);
                bool same = is_exact_v<T> ? (sq(i, j) == target)
                                          : std::fabs(to_double(sq(i, j)) - to_double(target)) <=
                                                kFloatTolerance * std::max(1.0, std::fabs(to_double(target)));
                if (!same) {
                    pattern = false;
                    break;
                }
            }
        }
    }
    c.equality_case = pattern;
    if constexpr (is_exact_v<T>) {
        bool tight = (c.trace * c.trace == rank_t * c.frobenius_sq);
        if (tight != pattern) {
            throw InvariantError("equality test disagrees with the trace inequality");
        }
    }
    return c;
}

template <Scalar T>
Matrix<T> hadamard_power(const Matrix<T>& a, unsigned p)
{
    if (p == 0) {
        throw UsageError("Hadamard power exponent must be positive");
    }
    Matrix<T> out(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            T v = a(i, j);
            T r = v;
            for (unsigned e = 1; e < p; ++e) {
                r *= v;
            }
            out(i, j) = r;
        }
    }
    return out;
}

mpz_class hadamard_rank_bound(std::size_t rank, unsigned p)
{
    if (rank == 0) {
        return 0;
    }
    return binomial(static_cast<unsigned long>(p + rank - 1), p);
}

template <Scalar T>
bool check_rows(const Matrix<T>& a, int k)
{
    for (std::size_t i = 0; i < a.rows(); ++i) {
        if (!scalars_k_collapsing(a.row(i), k)) {
            return false;
        }
    }
    return true;
}

#define KCOLLAPSE_INSTANTIATE(T)                                                 \
    template Matrix<T> gram_from_family(const VectorFamily<T>&);                 \
    template VectorFamily<T> family_from_matrix(const Matrix<T>&, std::size_t);  \
    template Matrix<T> row_normalize(const Matrix<T>&);                          \
    template std::size_t matrix_rank(const Matrix<T>&);                          \
    template RankCertificate<T> rank_certificate(const Matrix<T>&);              \
    template Matrix<T> hadamard_power(const Matrix<T>&, unsigned);               \
    template bool check_rows(const Matrix<T>&, int);

KCOLLAPSE_INSTANTIATE(Rational)
KCOLLAPSE_INSTANTIATE(double)

#undef KCOLLAPSE_INSTANTIATE

} // namespace kcollapse
