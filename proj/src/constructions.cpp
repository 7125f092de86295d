#include "kcollapse/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "kcollapse/errors.hpp"
#include "kcollapse/finite_field.hpp"
#include "kcollapse/matrix.hpp"

namespace kcollapse {

namespace {

constexpr std::size_t kDefaultMaxVectors = 4096;

Vec<Rational> unit(std::size_t d, std::size_t i, long sign = 1)
{
    Vec<Rational> e(d, Rational(0));
    e[i] = sign;
    return e;
}

} // namespace

Rational AlmostOrthogonalSet::gram(std::size_t i, std::size_t j) const
{
    if (!exact()) {
        throw UsageError("exact Gram entries need an exact set");
    }
    return scale_sq * dot(vectors[i], vectors[j]);
}

VectorFamily<Rational> linf_cross(std::size_t d)
{
    if (d < 1) {
        throw UsageError("dimension must be positive");
    }
    std::vector<Vec<Rational>> out;
    for (std::size_t i = 0; i < d; ++i) {
        out.push_back(unit(d, i));
        out.push_back(unit(d, i, -1));
    }
    return VectorFamily<Rational>(NormSpace::linf(d), std::move(out));
}

VectorFamily<Rational> linf_sign_vectors(std::size_t d)
{
    if (d < 1 || d > 12) {
        throw UsageError("sign vectors need 1 <= d <= 12");
    }
    std::vector<Vec<Rational>> out;
    Vec<Rational> v(d, Rational(-1));
    while (true) {
        if (std::any_of(v.begin(), v.end(), [](const Rational& x) { return x != 0; })) {
            out.push_back(v);
        }
        std::size_t i = d;
        while (i > 0 && v[i - 1] == 1) {
            v[i - 1] = -1;
            --i;
        }
        if (i == 0) {
            break;
        }
        v[i - 1] += 1;
    }
    return VectorFamily<Rational>(NormSpace::linf(d), std::move(out));
}

NormSpace pk_polytope_norm(std::size_t d, std::size_t k)
{
    if (d < 1 || k < 1) {
        throw UsageError("need d >= 1 and k >= 1");
    }
    // Points with fewer than min(k, d) nonzero entries are averages of fuller
    // ones, so only the full-support sign patterns are kept (one per +- pair).
    const std::size_t t = std::min(k, d);
    std::vector<Vec<Rational>> vertices;
    std::vector<bool> pick(d, false);
    std::fill(pick.begin(), pick.begin() + static_cast<long>(t), true);
    do {
        std::vector<std::size_t> support;
        for (std::size_t i = 0; i < d; ++i) {
            if (pick[i]) {
                support.push_back(i);
            }
        }
        for (std::uint64_t signs = 0; signs < (std::uint64_t{1} << (t - 1)); ++signs) {
            Vec<Rational> v(d, Rational(0));
            v[support[0]] = 1;
            for (std::size_t s = 1; s < t; ++s) {
                v[support[s]] = ((signs >> (s - 1)) & 1) ? -1 : 1;
            }
            vertices.push_back(std::move(v));
        }
    } while (std::prev_permutation(pick.begin(), pick.end()));
    return NormSpace::vpolytope(std::move(vertices));
}

LiftedFamily lift_almost_orthogonal(const AlmostOrthogonalSet& set, int k)
{
    if (k < 2) {
        throw UsageError("k must be at least 2");
    }
    const std::size_t m = set.size();
    if (m == 0) {
        throw UsageError("empty vector set");
    }
    std::vector<Vec<Rational>> raw = set.vectors;
    if (!set.exact()) {
        raw.clear();
        for (const auto& u : set.float_vectors) {
            Vec<Rational> r;
            r.reserve(u.size());
            for (double x : u) {
                r.push_back(rationalize(x));
            }
            raw.push_back(std::move(r));
        }
    }
    const Rational limit = Rational(1, 2 * k + 1);
    std::vector<Rational> sq(m);
    for (std::size_t i = 0; i < m; ++i) {
        sq[i] = dot(raw[i], raw[i]);
        if (is_zero(sq[i])) {
            throw UsageError("zero vector in almost-orthogonal set");
        }
    }
    // <u_i, u_j> as seen by the lift: <r_i, r_j> / |r_j|^2.
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            if (i != j && abs_of(dot(raw[i], raw[j]) / sq[j]) > limit) {
                throw PreconditionError("pair (" + std::to_string(i + 1) + ", " + std::to_string(j + 1) +
                                        ") exceeds the inner product bound 1/(2k+1)");
            }
        }
    }

    // Coordinates in the row-reduced basis of span{r_i}; G is the Gram matrix
    // of that basis so that pairings are preserved.
    std::vector<std::size_t> pivots;
    Matrix<Rational> red = rref(Matrix<Rational>::from_rows(raw), &pivots);
    const std::size_t r = pivots.size();
    Matrix<Rational> basis(r, red.cols());
    for (std::size_t t = 0; t < r; ++t) {
        for (std::size_t c = 0; c < red.cols(); ++c) {
            basis(t, c) = red(t, c);
        }
    }
    Matrix<Rational> g = basis * basis.transpose();

    const Rational lift = Rational(2 * k + 1, 2 * k);
    const Rational tail = Rational(-1, 2 * k);
    std::vector<Vec<Rational>> xs, ys;
    for (std::size_t i = 0; i < m; ++i) {
        Vec<Rational> c(r);
        for (std::size_t t = 0; t < r; ++t) {
            c[t] = raw[i][pivots[t]];
        }
        Vec<Rational> x = c;
        x.push_back(1);
        Vec<Rational> y = scaled(g * c, Rational(lift / sq[i]));
        y.push_back(tail);
        xs.push_back(std::move(x));
        ys.push_back(std::move(y));
    }
    for (std::size_t i = 0; i < m; ++i) {
        if (dot(xs[i], ys[i]) != 1) {
            throw InvariantError("lifted pair does not pair to 1");
        }
    }

    std::vector<SlabCap> caps;
    for (auto& n : null_space(Matrix<Rational>::from_rows(ys))) {
        Rational worst = 0;
        for (const auto& x : xs) {
            worst = std::max(worst, abs_of(dot(n, x)));
        }
        Rational lambda = is_zero(worst) ? Rational(1) : Rational(2 * k) * worst;
        caps.push_back(SlabCap{std::move(n), lambda});
    }
    NormSpace space = NormSpace::slab(ys, std::move(caps));
    return LiftedFamily{VectorFamily<Rational>(std::move(space), std::move(xs)), std::move(ys)};
}

AlmostOrthogonalSet greedy_unit_vectors(std::size_t d, double delta, std::uint64_t seed, std::uint64_t max_trials,
                                        std::optional<std::size_t> max_vectors)
{
    if (d < 1) {
        throw UsageError("dimension must be positive");
    }
    if (!(delta > 0.0) || delta > 1.0) {
        throw UsageError("delta must lie in (0, 1]");
    }
    const std::size_t cap = max_vectors.value_or(kDefaultMaxVectors);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    AlmostOrthogonalSet out;
    out.dim = d;
    out.span_dim = d;
    out.strict = true;
    out.bound = rationalize(delta);
    out.gram_lo = -out.bound;
    out.gram_hi = out.bound;
    std::uint64_t rejected = 0;
    Vec<double> v(d);
    while (rejected < max_trials && out.float_vectors.size() < cap) {
        double n2 = 0;
        for (auto& x : v) {
            x = normal(rng);
            n2 += x * x;
        }
        if (n2 == 0.0) {
            continue;
        }
        const double inv = 1.0 / std::sqrt(n2);
        for (auto& x : v) {
            x *= inv;
        }
        bool ok = true;
        for (const auto& u : out.float_vectors) {
            if (std::fabs(dot(u, v)) >= delta) {
                ok = false;
                break;
            }
        }
        if (ok) {
            out.float_vectors.push_back(v);
            rejected = 0;
        } else {
            ++rejected;
        }
    }
    return out;
}

AlmostOrthogonalSet polynomial_vectors(unsigned q, unsigned s)
{
    if (!prime_power(q)) {
        throw UsageError(std::to_string(q) + " is not a prime power");
    }
    if (s < 1 || s >= q) {
        throw UsageError("need 1 <= s < q");
    }
    FiniteField field(q);
    std::uint64_t count = 1;
    for (unsigned i = 0; i <= s; ++i) {
        count *= q;
    }
    AlmostOrthogonalSet out;
    out.dim = static_cast<std::size_t>(q) * q;
    out.span_dim = out.dim - q;
    out.scale_sq = Rational(1) / Rational(static_cast<long>(q) * q * (q - 1));
    out.scale_sq.canonicalize();
    out.gram_lo = Rational(-1, q - 1);
    out.gram_hi = Rational(static_cast<long>(s) - 1, q - 1);
    out.gram_lo.canonicalize();
    out.gram_hi.canonicalize();
    out.bound = std::max(abs_of(out.gram_lo), abs_of(out.gram_hi));
    out.vectors.reserve(count);
    std::vector<unsigned> coeffs(s + 1);
    const Rational hi = static_cast<long>(q) - 1;
    const Rational lo = -1;
    for (std::uint64_t idx = 0; idx < count; ++idx) {
        std::uint64_t c = idx;
        for (auto& a : coeffs) {
            a = static_cast<unsigned>(c % q);
            c /= q;
        }
        Vec<Rational> v(out.dim, lo);
        for (unsigned x = 0; x < q; ++x) {
            v[static_cast<std::size_t>(x) * q + field.eval(coeffs, x)] = hi;
        }
        out.vectors.push_back(std::move(v));
    }
    return out;
}

VectorFamily<Rational> fixture_X(std::size_t d, const Rational& eps)
{
    if (d < 2) {
        throw UsageError("fixture X needs d >= 2");
    }
    const Rational dq = static_cast<long>(d);
    if (!(eps > 0) || eps > 1 / dq) {
        throw UsageError("need 0 < eps <= 1/d");
    }
    std::vector<Vec<Rational>> basis;
    for (std::size_t i = 0; i + 1 < d; ++i) {
        Vec<Rational> b(d + 1, Rational(0));
        b[i] = 1;
        b[d - 1] = -1;
        basis.push_back(b);
    }
    basis.push_back(unit(d + 1, d));
    const Rational a = ((dq + 1) / dq - eps) / 2;
    const Rational top = 1 / (dq * dq) + (1 - 1 / dq) * eps;
    std::vector<Vec<Rational>> xs;
    for (std::size_t i = 0; i < d; ++i) {
        Vec<Rational> x(d + 1, Rational(0));
        for (std::size_t j = 0; j < d; ++j) {
            x[j] = a * ((i == j ? Rational(1) : Rational(0)) - 1 / dq);
        }
        x[d] = top;
        xs.push_back(std::move(x));
    }
    return VectorFamily<Rational>(NormSpace::l1_subspace(d + 1, std::move(basis)), std::move(xs));
}

VectorFamily<Rational> fixture_Y(std::size_t d)
{
    if (d < 2) {
        throw UsageError("fixture Y needs d >= 2");
    }
    const Rational dq = static_cast<long>(d);
    std::vector<Vec<Rational>> basis;
    for (std::size_t i = 0; i < d; ++i) {
        Vec<Rational> b(d + 1, Rational(0));
        b[i] = 1;
        b[d] = -1;
        basis.push_back(b);
    }
    std::vector<Vec<Rational>> ys;
    for (std::size_t i = 0; i <= d; ++i) {
        Vec<Rational> y(d + 1, -1 / (2 * dq));
        y[i] += (dq + 1) / (2 * dq);
        ys.push_back(std::move(y));
    }
    return VectorFamily<Rational>(NormSpace::l1_subspace(d + 1, std::move(basis)), std::move(ys));
}

Vec<Rational> counterexample_tuple(int m)
{
    if (m < 5) {
        throw UsageError("counterexample tuple needs m >= 5");
    }
    Rational small = Rational(-3, m - 1);
    Rational big = Rational(2 * m - 5, m - 1);
    small.canonicalize();
    big.canonicalize();
    Vec<Rational> t(static_cast<std::size_t>(m - 2), small);
    t.push_back(big);
    t.push_back(big);
    return t;
}

} // namespace kcollapse
