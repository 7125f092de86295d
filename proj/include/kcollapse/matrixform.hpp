#pragma once

#include <cstddef>

#include <gmpxx.h>

#include "kcollapse/family.hpp"
#include "kcollapse/matrix.hpp"

namespace kcollapse {

/// A = [<x_i*, x_j>] for dual unit vectors x_i* of the family members.
template <Scalar T>
Matrix<T> gram_from_family(const VectorFamily<T>& family);

/// Columns of A as vectors of l_inf^m. Requires rank(A) <= d.
template <Scalar T>
VectorFamily<T> family_from_matrix(const Matrix<T>& a, std::size_t d);

/// Divides row i by a_ii. Requires a_ii >= 1 and |a_ij| <= 1 off the diagonal.
template <Scalar T>
Matrix<T> row_normalize(const Matrix<T>& a);

template <Scalar T>
std::size_t matrix_rank(const Matrix<T>& a);

template <Scalar T>
struct RankCertificate
{
    T trace = T(0);
    T frobenius_sq = T(0);
    T rank_lower_bound = T(0); // trace^2 / frobenius_sq, 0 for the zero matrix
    std::size_t rank = 0;
    bool symmetric = false;
    bool equality_case = false;
};

/// Trace/Frobenius certificate. Throws InvariantError if the bound ever exceeds
/// the rank, or if the symmetric A^2 = cA test disagrees with equality in the
/// trace inequality.
template <Scalar T>
RankCertificate<T> rank_certificate(const Matrix<T>& a);

template <Scalar T>
Matrix<T> hadamard_power(const Matrix<T>& a, unsigned p);

/// C(p + r - 1, p): the rank bound for the p-th Hadamard power of a rank-r matrix.
mpz_class hadamard_rank_bound(std::size_t rank, unsigned p);

/// Every row passes the one-dimensional k-collapsing test.
template <Scalar T>
bool check_rows(const Matrix<T>& a, int k);

} // namespace kcollapse
