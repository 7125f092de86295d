#include "kcollapse/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "kcollapse/combinatorics.hpp"
#include "kcollapse/errors.hpp"
#include "kcollapse/finite_field.hpp"

namespace kcollapse {

namespace {

void check_kd(int k, int d)
{
    if (k < 2 || d < 2) {
        throw UsageError("bounds need k >= 2 and d >= 2");
    }
}

mpz_class floor_q(const Rational& v)
{
    mpz_class r;
    mpz_fdiv_q(r.get_mpz_t(), v.get_num_mpz_t(), v.get_den_mpz_t());
    return r;
}

mpz_class ceil_q(const Rational& v)
{
    mpz_class r;
    mpz_cdiv_q(r.get_mpz_t(), v.get_num_mpz_t(), v.get_den_mpz_t());
    return r;
}

// Largest integer strictly below v.
mpz_class below_q(const Rational& v)
{
    return ceil_q(v) - 1;
}

mpz_class below_d(double v)
{
    mpz_class c(std::ceil(v));
    return c - 1;
}

mpz_class ceil_d(double v)
{
    return mpz_class(std::ceil(v));
}

Rational qpow(const Rational& b, int e)
{
    Rational r = 1;
    for (int i = 0; i < e; ++i) {
        r *= b;
    }
    return r;
}

BoundResult make(std::string name, BoundKind kind, Quantity qty, std::string note)
{
    BoundResult r;
    r.name = std::move(name);
    r.kind = kind;
    r.quantity = qty;
    r.note = std::move(note);
    return r;
}

BoundResult with_value(BoundResult r, double raw, mpz_class value)
{
    r.applicable = true;
    r.raw = raw;
    r.value = std::move(value);
    return r;
}

double log_f(double x)
{
    return std::log1p(x) / x + std::log1p(1.0 / x);
}

std::string fixed_trimmed(const mpz_class& scaled, int decimals)
{
    mpz_class unit = 1;
    for (int i = 0; i < decimals; ++i) {
        unit *= 10;
    }
    mpz_class ip = scaled / unit;
    mpz_class fp = scaled % unit;
    std::string frac = fp.get_str();
    frac.insert(0, static_cast<std::size_t>(decimals) - frac.size(), '0');
    while (!frac.empty() && frac.back() == '0') {
        frac.pop_back();
    }
    return frac.empty() ? ip.get_str() : ip.get_str() + "." + frac;
}

} // namespace

std::string bound_kind_name(BoundKind k)
{
    switch (k) {
    case BoundKind::Upper:
        return "upper";
    case BoundKind::Lower:
        return "lower";
    case BoundKind::Exact:
        return "exact";
    }
    return "?";
}

std::string quantity_name(Quantity q)
{
    switch (q) {
    case Quantity::C:
        return "C";
    case Quantity::CB:
        return "CB";
    case Quantity::Both:
        return "C,CB";
    case Quantity::Space:
        return "C_k(X)";
    }
    return "?";
}

GammaValue gamma_k(int k)
{
    if (k < 2) {
        throw UsageError("gamma_k needs k >= 2");
    }
    const double e = std::numbers::e;
    const double k2 = static_cast<double>(k) * k;
    GammaValue g;
    g.k = k;
    g.lo = e / k2;
    g.hi = e / (k2 - e);
    if (k == 2) {
        g.gamma = 1.0;
        return g;
    }
    const double target = std::log(k2);
    double lo = g.lo, hi = g.hi;
    for (int it = 0; it < 2000; ++it) {
        double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) {
            break;
        }
        if (log_f(mid) > target) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    g.gamma = 0.5 * (lo + hi);
    return g;
}

BoundResult ub_balanced(int k, int d)
{
    check_kd(k, d);
    auto r = make("balanced", BoundKind::Exact, Quantity::CB, "strongly balancing families: max{k+1, 2d}");
    int v = std::max(k + 1, 2 * d);
    return with_value(r, v, v);
}

BoundResult ub_rankthm1(int k, int d)
{
    check_kd(k, d);
    auto r = make("rank_gamma", BoundKind::Upper, Quantity::C, "strict: C < 1.33 k^{2 gamma_k d + 2}");
    const double g = gamma_k(k).gamma;
    const double base = std::pow(static_cast<double>(k), 2.0 * g * d + 2.0);
    double v = 1.33 * base;
    if (static_cast<long>(k) * k < d) {
        v = static_cast<double>(k) / std::sqrt(static_cast<double>(d)) * base;
        r.note = "strict, refined for k < sqrt(d): C < (k/sqrt d) k^{2 gamma_k d + 2}";
    }
    if (!std::isfinite(v)) {
        r.note += "; value overflows binary64";
        return r;
    }
    return with_value(r, v, below_d(v));
}

BoundResult ub_rankthm2(int k, int d)
{
    check_kd(k, d);
    auto r = make("rank_large_k", BoundKind::Upper, Quantity::C, "");
    if (k < 3) {
        r.note = "needs k >= 3";
        return r;
    }
    const long K = k, D = d;
    // -2d + sqrt(6d^2+3d+1) <= k <= 2d - sqrt(d/2), tested in integers.
    bool case2 = (K + 2 * D) * (K + 2 * D) >= 6 * D * D + 3 * D + 1 && 2 * D >= K && 2 * (2 * D - K) * (2 * D - K) >= D;
    if (case2) {
        r.kind = BoundKind::Exact;
        r.note = "middle range: C = 2d";
        return with_value(r, 2.0 * d, 2 * d);
    }
    if (K * K > D && 2 * K <= D + 1) {
        Rational v = Rational(2 * D * (K - 1) * (K - 1)) / Rational(K * K - D);
        v.canonicalize();
        r.note = "sqrt(d) < k <= (d+1)/2: C <= 2d(k-1)^2/(k^2-d)";
        return with_value(r, v.get_d(), floor_q(v));
    }
    bool above = 2 * D < K || 2 * (2 * D - K) * (2 * D - K) < D;
    if (D >= 3 && above) {
        // floor((1 + sqrt(2d-3))/2) = largest j with (2j-1)^2 <= 2d-3
        long j = 0;
        while ((2 * (j + 1) - 1) * (2 * (j + 1) - 1) <= 2 * D - 3) {
            ++j;
        }
        double raw = k + (1.0 + std::sqrt(2.0 * d - 3.0)) / 2.0;
        r.note = "k > 2d - sqrt(d/2): C <= k + (1 + sqrt(2d-3))/2";
        return with_value(r, raw, mpz_class(K + j));
    }
    r.note = "no case applies";
    return r;
}

BoundResult ub_newthm(int k, int d)
{
    check_kd(k, d);
    auto r = make("small_d_exact", BoundKind::Exact, Quantity::C, "C = max{k+1, 2d}");
    bool listed = (d == 2) || (d >= 3 && d <= 5 && k >= 3) || (d == 6 && ((k >= 3 && k <= 10) || k >= 17)) ||
                  (d == 7 && ((k >= 3 && k <= 12) || k >= 41));
    if (listed) {
        int v = std::max(k + 1, 2 * d);
        return with_value(r, v, v);
    }
    if (k == 2 && d == 3) {
        r.kind = BoundKind::Upper;
        r.note = "C(2,3) <= 9";
        return with_value(r, 9.0, 9);
    }
    r.note = "(k, d) not covered";
    return r;
}

BoundResult ub_bmthm(int k, int d)
{
    check_kd(k, d);
    auto r = make("brunn_minkowski", BoundKind::Upper, Quantity::C, "C <= k(1+2/k)^d + k - 1");
    Rational base = Rational(k + 2, k);
    base.canonicalize();
    Rational v = Rational(k) * qpow(base, d) + Rational(k - 1);
    return with_value(r, v.get_d(), floor_q(v));
}

BoundResult ub_bmdistance(int k, const Rational& dist_sq)
{
    if (k < 2) {
        throw UsageError("k must be at least 2");
    }
    if (dist_sq < 1) {
        throw UsageError("Banach-Mazur distance is at least 1");
    }
    if (!(Rational(k) > dist_sq)) {
        throw UsageError("need k > D^2");
    }
    auto r = make("bm_distance", BoundKind::Upper, Quantity::Space, "C_k(X) <= (k^2 - D^2)/(k - D^2)");
    Rational threshold = Rational(2 * k - 1, k + 1);
    threshold.canonicalize();
    if (dist_sq <= threshold) {
        r.kind = BoundKind::Exact;
        r.note = "D^2 <= (2k-1)/(k+1): C_k(X) = k+1";
        return with_value(r, k + 1.0, k + 1);
    }
    Rational v = (Rational(k * k) - dist_sq) / (Rational(k) - dist_sq);
    return with_value(r, v.get_d(), floor_q(v));
}

BoundResult ub_eucl(int k, const Rational& lambda_sq)
{
    if (k < 2) {
        throw UsageError("k must be at least 2");
    }
    if (!(lambda_sq > 0) || !(lambda_sq < k)) {
        throw UsageError("need 0 < lambda < sqrt(k)");
    }
    auto r = make("euclidean", BoundKind::Upper, Quantity::Space, "m <= (k^2 - lambda^2)/(k - lambda^2)");
    Rational v = (Rational(k * k) - lambda_sq) / (Rational(k) - lambda_sq);
    return with_value(r, v.get_d(), floor_q(v));
}

BoundResult ub_hadamard(int k, int d, int p)
{
    check_kd(k, d);
    if (p < 1) {
        throw UsageError("Hadamard exponent must be positive");
    }
    auto r = make("hadamard", BoundKind::Upper, Quantity::C,
                  "strict: C < max{2k^{2p}B/(k^{2p}-B), 2k-1}, B = C(d+p-1, p), p = " + std::to_string(p));
    mpz_class b = binomial(static_cast<unsigned long>(d + p - 1), static_cast<unsigned long>(p));
    mpz_class kp;
    mpz_ui_pow_ui(kp.get_mpz_t(), static_cast<unsigned long>(k), static_cast<unsigned long>(2 * p));
    if (kp <= b) {
        r.note += "; needs k > B^{1/(2p)}";
        return r;
    }
    Rational v = Rational(2 * kp * b) / Rational(kp - b);
    v.canonicalize();
    v = std::max(v, Rational(2 * k - 1));
    return with_value(r, v.get_d(), below_q(v));
}

BoundResult ub_hadamard_sweep(int k, int d)
{
    std::optional<BoundResult> best;
    for (int p = 1; p <= 10; ++p) {
        auto r = ub_hadamard(k, d, p);
        if (r.applicable && (!best || *r.value < *best->value)) {
            best = r;
        }
    }
    if (!best) {
        auto r = make("hadamard", BoundKind::Upper, Quantity::C, "no p in 1..10 satisfies k > B^{1/(2p)}");
        return r;
    }
    return *best;
}

double binom_stirling_upper(int n, int k)
{
    if (k < 1 || k >= n) {
        throw UsageError("need 1 <= k < n");
    }
    const double eps = static_cast<double>(k) / n;
    const double h = -eps * std::log(eps) - (1 - eps) * std::log(1 - eps);
    return std::exp(n * h) / std::sqrt(2 * std::numbers::pi * eps * (1 - eps) * n);
}

BoundResult lb_trivial(int k, int d)
{
    check_kd(k, d);
    auto r = make("trivial", BoundKind::Lower, Quantity::Both, "k+1 vectors always; +-e_i in l_inf^d");
    int v = std::max(k + 1, 2 * d);
    return with_value(r, v, v);
}

BoundResult lb_greedy(int k, int d)
{
    check_kd(k, d);
    auto r = make("greedy", BoundKind::Lower, Quantity::C, "C >= (1 + 1/(2(2k+1)^2))^d, for sufficiently large d");
    r.needs_large_d = true;
    const double n = 2.0 * (2 * k + 1) * (2 * k + 1);
    double v = std::pow(1.0 + 1.0 / n, d);
    return with_value(r, v, ceil_d(v));
}

BoundResult lb_polynomial(int k, int d)
{
    check_kd(k, d);
    auto r = make("polynomial", BoundKind::Lower, Quantity::C, "");
    const std::uint64_t q = largest_plane_order(static_cast<std::uint64_t>(d));
    if (q < 2) {
        r.note = "no prime power q with q^2 - q + 1 <= d";
        return r;
    }
    // c <= q-2 and k <= (q-1)/(2c) - 1/2, i.e. c(2k+1) <= q-1
    long c = std::min<long>(static_cast<long>(q) - 2, (static_cast<long>(q) - 1) / (2L * k + 1));
    r.note = "q = " + std::to_string(q);
    if (c < 1) {
        r.note += "; no feasible c";
        return r;
    }
    mpz_class v;
    mpz_ui_pow_ui(v.get_mpz_t(), q, static_cast<unsigned long>(c + 2));
    r.note += ", c = " + std::to_string(c) + ": C >= q^{c+2}";
    return with_value(r, v.get_d(), v);
}

std::vector<BoundResult> ub_asymptotic(int k, int d)
{
    check_kd(k, d);
    std::vector<BoundResult> out;
    auto a = make("asymptotic_k_large", BoundKind::Exact, Quantity::C, "C = k+1 when k >> d^{d+2}; no constant known");
    a.applicable = true;
    a.asymptotic_only = true;
    out.push_back(a);
    auto b = make("asymptotic_sqrt_d", BoundKind::Upper, Quantity::C,
                  "((p!)^{-1/(2p)} + eps) sqrt(d) < k <= sqrt(d) implies C = O(d^p) for d > d_0; constants unknown");
    b.applicable = true;
    b.asymptotic_only = true;
    out.push_back(b);
    return out;
}

std::vector<BoundResult> all_bounds(int k, int d)
{
    std::vector<BoundResult> out{
        ub_balanced(k, d),      ub_rankthm1(k, d), ub_rankthm2(k, d), ub_newthm(k, d), ub_bmthm(k, d),
        ub_hadamard_sweep(k, d), lb_trivial(k, d), lb_greedy(k, d),   lb_polynomial(k, d),
    };
    for (auto& r : ub_asymptotic(k, d)) {
        out.push_back(std::move(r));
    }
    return out;
}

BestBounds best_bounds(int k, int d)
{
    check_kd(k, d);
    BestBounds b;
    auto lower = lb_trivial(k, d);
    b.best_lower = *lower.value;
    b.lower_source = lower.name;
    auto poly = lb_polynomial(k, d);
    if (poly.applicable && *poly.value > b.best_lower) {
        b.best_lower = *poly.value;
        b.lower_source = poly.name;
    }
    bool have_upper = false;
    std::optional<BoundResult> exact;
    for (const auto& r : {ub_rankthm1(k, d), ub_rankthm2(k, d), ub_newthm(k, d), ub_bmthm(k, d), ub_hadamard_sweep(k, d)}) {
        if (!r.applicable || !r.value) {
            continue;
        }
        if (!have_upper || *r.value < b.best_upper) {
            b.best_upper = *r.value;
            b.upper_source = r.name;
            have_upper = true;
        }
        if (r.kind == BoundKind::Exact) {
            if (exact && *exact->value != *r.value) {
                throw InvariantError("exact results " + exact->name + " and " + r.name + " disagree");
            }
            exact = r;
        }
    }
    if (exact && *exact->value > b.best_lower) {
        b.best_lower = *exact->value;
        b.lower_source = exact->name;
    }
    if (b.best_lower > b.best_upper) {
        throw InvariantError("lower bound " + b.best_lower.get_str() + " exceeds upper bound " + b.best_upper.get_str() +
                             " at k=" + std::to_string(k) + ", d=" + std::to_string(d));
    }
    if (b.best_lower == b.best_upper) {
        b.exact = b.best_lower;
    }
    b.greedy = lb_greedy(k, d);
    return b;
}

std::vector<Table1Row> table1(int kmin, int kmax)
{
    if (kmin < 2 || kmax < kmin) {
        throw UsageError("table rows need 2 <= kmin <= kmax");
    }
    std::vector<Table1Row> rows;
    for (int k = kmin; k <= kmax; ++k) {
        Table1Row row;
        row.k = k;
        row.gamma = gamma_k(k).gamma;
        mpz_class g7(std::nearbyint(row.gamma * 1e7));
        row.gamma_text = fixed_trimmed(g7, 7);
        if (g7 % 10000000 != 0) {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.7f", row.gamma);
            row.gamma_text = buf;
        }
        double rb = std::pow(static_cast<double>(k), 2.0 * row.gamma);
        row.rank_base = fixed_trimmed(mpz_class(std::ceil(rb * 1000.0 - 1e-9)), 3);
        mpz_class bm;
        mpz_class num(1000 * (k + 2));
        mpz_cdiv_q_ui(bm.get_mpz_t(), num.get_mpz_t(), static_cast<unsigned long>(k));
        row.bm_base = fixed_trimmed(bm, 3);
        const long n = 2L * (2 * k + 1) * (2 * k + 1);
        mpz_class gnum(10000 * (n + 1));
        mpz_class gb;
        mpz_fdiv_q_ui(gb.get_mpz_t(), gnum.get_mpz_t(), static_cast<unsigned long>(n));
        row.greedy_base = fixed_trimmed(gb, 4);
        rows.push_back(row);
    }
    return rows;
}

} // namespace kcollapse
