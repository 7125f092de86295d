#include "kcollapse/matrix.hpp"

#include <algorithm>

#include <Eigen/SVD>

#include "kcollapse/errors.hpp"

namespace kcollapse {

template <Scalar T>
Matrix<T> Matrix<T>::from_rows(const std::vector<Vec<T>>& rows)
{
    if (rows.empty()) {
        return Matrix();
    }
    Matrix m(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != m.cols_) {
            throw UsageError("ragged rows in matrix construction");
        }
        for (std::size_t j = 0; j < m.cols_; ++j) {
            m(i, j) = rows[i][j];
        }
    }
    return m;
}

template <Scalar T>
Vec<T> Matrix<T>::row(std::size_t i) const
{
    return Vec<T>(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                  data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

template <Scalar T>
Vec<T> Matrix<T>::col(std::size_t j) const
{
    Vec<T> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        c[i] = (*this)(i, j);
    }
    return c;
}

template <Scalar T>
Matrix<T> Matrix<T>::transpose() const
{
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) {
            t(j, i) = (*this)(i, j);
        }
    }
    return t;
}

template <Scalar T>
Matrix<T> Matrix<T>::operator*(const Matrix& other) const
{
    if (cols_ != other.rows_) {
        throw UsageError("matrix product dimension mismatch");
    }
    Matrix p(rows_, other.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t l = 0; l < cols_; ++l) {
            const T& a = (*this)(i, l);
            if (is_zero(a)) {
                continue;
            }
            for (std::size_t j = 0; j < other.cols_; ++j) {
                p(i, j) += a * other(l, j);
            }
        }
    }
    return p;
}

template <Scalar T>
Vec<T> Matrix<T>::operator*(const Vec<T>& v) const
{
    if (cols_ != v.size()) {
        throw UsageError("matrix-vector dimension mismatch");
    }
    Vec<T> r(rows_, T(0));
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) {
            r[i] += (*this)(i, j) * v[j];
        }
    }
    return r;
}

template <Scalar T>
Matrix<T> rref(Matrix<T> a, std::vector<std::size_t>* pivots)
{
    std::vector<std::size_t> piv;
    std::size_t lead_row = 0;
    for (std::size_t c = 0; c < a.cols() && lead_row < a.rows(); ++c) {
        std::size_t best = a.rows();
        if constexpr (is_exact_v<T>) {
            for (std::size_t r = lead_row; r < a.rows(); ++r) {
                if (!is_zero(a(r, c))) {
                    best = r;
                    break;
                }
            }
        } else {
            double best_abs = kFloatTolerance;
            for (std::size_t r = lead_row; r < a.rows(); ++r) {
                if (std::fabs(a(r, c)) > best_abs) {
                    best_abs = std::fabs(a(r, c));
                    best = r;
                }
            }
        }
        if (best == a.rows()) {
            if constexpr (!is_exact_v<T>) {
                for (std::size_t r = lead_row; r < a.rows(); ++r) {
                    a(r, c) = 0.0;
                }
            }
            continue;
        }
        if (best != lead_row) {
            for (std::size_t j = 0; j < a.cols(); ++j) {
                std::swap(a(best, j), a(lead_row, j));
            }
        }
        T inv = T(1) / a(lead_row, c);
        for (std::size_t j = c; j < a.cols(); ++j) {
            a(lead_row, j) *= inv;
        }
        for (std::size_t r = 0; r < a.rows(); ++r) {
            if (r == lead_row || is_zero(a(r, c))) {
                if (r != lead_row) {
                    a(r, c) = T(0);
                }
                continue;
            }
            T factor = a(r, c);
            for (std::size_t j = c; j < a.cols(); ++j) {
                a(r, j) -= factor * a(lead_row, j);
            }
        }
        piv.push_back(c);
        ++lead_row;
    }
    if (pivots != nullptr) {
        *pivots = std::move(piv);
    }
    return a;
}

template <>
std::size_t rank_of(const Matrix<Rational>& a)
{
    std::vector<std::size_t> piv;
    rref(a, &piv);
    return piv.size();
}

template <>
std::size_t rank_of(const Matrix<double>& a)
{
    if (a.rows() == 0 || a.cols() == 0) {
        return 0;
    }
    Eigen::MatrixXd m(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = a(i, j);
        }
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
    const auto& sv = svd.singularValues();
    if (sv.size() == 0 || sv(0) == 0.0) {
        return 0;
    }
    double cutoff = kFloatTolerance * sv(0);
    std::size_t r = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
        if (sv(i) > cutoff) {
            ++r;
        }
    }
    return r;
}

template <Scalar T>
std::optional<Vec<T>> solve_square(const Matrix<T>& a, const Vec<T>& b)
{
    if (!a.square() || a.rows() != b.size()) {
        throw UsageError("solve_square needs a square system");
    }
    auto x = solve_any(a, b);
    if (!x) {
        return std::nullopt;
    }
    std::vector<std::size_t> piv;
    rref(a, &piv);
    if (piv.size() != a.rows()) {
        return std::nullopt;
    }
    return x;
}

template <Scalar T>
std::optional<Vec<T>> solve_any(const Matrix<T>& a, const Vec<T>& b)
{
    if (a.rows() != b.size()) {
        throw UsageError("solve_any: right-hand side length mismatch");
    }
    Matrix<T> aug(a.rows(), a.cols() + 1);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            aug(i, j) = a(i, j);
        }
        aug(i, a.cols()) = b[i];
    }
    std::vector<std::size_t> piv;
    Matrix<T> r = rref(aug, &piv);
    if (!piv.empty() && piv.back() == a.cols()) {
        return std::nullopt;
    }
    Vec<T> x(a.cols(), T(0));
    for (std::size_t i = 0; i < piv.size(); ++i) {
        x[piv[i]] = r(i, a.cols());
    }
    return x;
}

template <Scalar T>
std::vector<Vec<T>> null_space(const Matrix<T>& a)
{
    std::vector<std::size_t> piv;
    Matrix<T> r = rref(a, &piv);
    std::vector<bool> is_pivot(a.cols(), false);
    for (auto p : piv) {
        is_pivot[p] = true;
    }
    std::vector<Vec<T>> basis;
    for (std::size_t free = 0; free < a.cols(); ++free) {
        if (is_pivot[free]) {
            continue;
        }
        Vec<T> v(a.cols(), T(0));
        v[free] = T(1);
        for (std::size_t i = 0; i < piv.size(); ++i) {
            v[piv[i]] = -r(i, free);
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

template class Matrix<Rational>;
template class Matrix<double>;
template Matrix<Rational> rref(Matrix<Rational>, std::vector<std::size_t>*);
template Matrix<double> rref(Matrix<double>, std::vector<std::size_t>*);
template std::optional<Vec<Rational>> solve_square(const Matrix<Rational>&, const Vec<Rational>&);
template std::optional<Vec<double>> solve_square(const Matrix<double>&, const Vec<double>&);
template std::optional<Vec<Rational>> solve_any(const Matrix<Rational>&, const Vec<Rational>&);
template std::optional<Vec<double>> solve_any(const Matrix<double>&, const Vec<double>&);
template std::vector<Vec<Rational>> null_space(const Matrix<Rational>&);
template std::vector<Vec<double>> null_space(const Matrix<double>&);

} // namespace kcollapse
