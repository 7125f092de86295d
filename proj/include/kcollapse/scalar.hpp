#pragma once

#include <cmath>
#include <concepts>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace kcollapse {

using Rational = mpq_class;

/// Absolute tolerance used by every binary64 comparison in the library.
inline constexpr double kFloatTolerance = 1e-9;

template <class T>
concept Scalar = std::same_as<T, Rational> || std::same_as<T, double>;

template <Scalar T>
inline constexpr bool is_exact_v = std::same_as<T, Rational>;

template <Scalar T>
using Vec = std::vector<T>;

inline Rational abs_of(const Rational& x) { return abs(x); }
inline double abs_of(double x) { return std::fabs(x); }

inline bool is_zero(const Rational& x) { return sgn(x) == 0; }
inline bool is_zero(double x) { return std::fabs(x) <= kFloatTolerance; }

inline int sign_of(const Rational& x) { return sgn(x); }
inline int sign_of(double x) { return is_zero(x) ? 0 : (x > 0 ? 1 : -1); }

/// a <= b, exact for rationals and with absolute slack kFloatTolerance for doubles.
inline bool leq(const Rational& a, const Rational& b) { return a <= b; }
inline bool leq(double a, double b) { return a <= b + kFloatTolerance; }

/// a < b, strict for rationals; doubles need a margin of kFloatTolerance.
inline bool less(const Rational& a, const Rational& b) { return a < b; }
inline bool less(double a, double b) { return a < b - kFloatTolerance; }

inline bool approx_equal(const Rational& a, const Rational& b) { return a == b; }
inline bool approx_equal(double a, double b) { return std::fabs(a - b) <= kFloatTolerance; }

inline double to_double(const Rational& x) { return x.get_d(); }
inline double to_double(double x) { return x; }

template <Scalar T>
T from_int(long v)
{
    if constexpr (is_exact_v<T>) {
        return Rational(v);
    } else {
        return static_cast<double>(v);
    }
}

template <Scalar T>
T from_fraction(long num, long den)
{
    if constexpr (is_exact_v<T>) {
        Rational r(num, den);
        r.canonicalize();
        return r;
    } else {
        return static_cast<double>(num) / static_cast<double>(den);
    }
}

/// Exact square root of a non-negative rational; throws InexactError when irrational.
Rational sqrt_exact(const Rational& x);
inline double sqrt_of(double x) { return std::sqrt(x); }
inline Rational sqrt_of(const Rational& x) { return sqrt_exact(x); }

/// Continued-fraction rationalization: the first convergent within `tol` of x.
Rational rationalize(double x, double tol = 1e-12);

/// Parses "p/q", "p", or a decimal literal such as "0.25" into an exact rational.
Rational parse_rational(const std::string& text);

/// Canonical "p/q" (or "p" when the denominator is 1).
std::string format_rational(const Rational& x);

template <Scalar T>
T dot(const Vec<T>& a, const Vec<T>& b)
{
    T s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        s += a[i] * b[i];
    }
    return s;
}

template <Scalar T>
Vec<T> add(const Vec<T>& a, const Vec<T>& b)
{
    Vec<T> r(a);
    for (std::size_t i = 0; i < r.size(); ++i) {
        r[i] += b[i];
    }
    return r;
}

template <Scalar T>
Vec<T> subtract(const Vec<T>& a, const Vec<T>& b)
{
    Vec<T> r(a);
    for (std::size_t i = 0; i < r.size(); ++i) {
        r[i] -= b[i];
    }
    return r;
}

template <Scalar T>
Vec<T> scaled(const Vec<T>& a, const T& s)
{
    Vec<T> r(a);
    for (auto& v : r) {
        v *= s;
    }
    return r;
}

template <Scalar T>
bool is_zero_vector(const Vec<T>& v)
{
    for (const auto& x : v) {
        if (!is_zero(x)) {
            return false;
        }
    }
    return true;
}

} // namespace kcollapse
