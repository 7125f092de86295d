#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "kcollapse/scalar.hpp"

namespace kcollapse {

/// Dense row-major matrix over one of the two scalar backends.
template <Scalar T>
class Matrix
{
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}

    static Matrix identity(std::size_t n)
    {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            m(i, i) = T(1);
        }
        return m;
    }

    static Matrix from_rows(const std::vector<Vec<T>>& rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    Vec<T> row(std::size_t i) const;
    Vec<T> col(std::size_t j) const;

    Matrix transpose() const;
    Matrix operator*(const Matrix& other) const;
    Vec<T> operator*(const Vec<T>& v) const;

    bool operator==(const Matrix& other) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

/// Reduced row echelon form. Exact for rationals; partial pivoting with
/// kFloatTolerance for doubles. `pivots` receives the pivot column of each
/// nonzero row.
template <Scalar T>
Matrix<T> rref(Matrix<T> a, std::vector<std::size_t>* pivots = nullptr);

/// Exact rank by row reduction (rationals); singular values above
/// kFloatTolerance times the largest singular value (doubles).
template <Scalar T>
std::size_t rank_of(const Matrix<T>& a);

/// Unique solution of a square system, or nullopt when singular.
template <Scalar T>
std::optional<Vec<T>> solve_square(const Matrix<T>& a, const Vec<T>& b);

/// Some solution of a (possibly rectangular) system a x = b, or nullopt when inconsistent.
template <Scalar T>
std::optional<Vec<T>> solve_any(const Matrix<T>& a, const Vec<T>& b);

/// Basis of {x : a x = 0}, one vector per free column.
template <Scalar T>
std::vector<Vec<T>> null_space(const Matrix<T>& a);

} // namespace kcollapse
