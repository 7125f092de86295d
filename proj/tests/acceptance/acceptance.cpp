// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "kcollapse/bounds.hpp"
#include "kcollapse/combinatorics.hpp"
#include "kcollapse/constructions.hpp"
#include "kcollapse/errors.hpp"
#include "kcollapse/family.hpp"
#include "kcollapse/graphtools.hpp"
#include "kcollapse/matrix.hpp"
#include "kcollapse/matrixform.hpp"
#include "kcollapse/simplexopt.hpp"

using namespace kcollapse;
using Q = Rational;

namespace {

struct Outcome
{
    bool pass = true;
    std::string detail;

    void fail(const std::string& why)
    {
        if (pass) {
            detail = why;
        }
        pass = false;
    }
};

template <typename... Parts>
std::string cat(const Parts&... parts)
{
    std::ostringstream s;
    (s << ... << parts);
    return s.str();
}

// Every k-subset of `values`, by plain recursion.
void for_each_subset(std::size_t n, std::size_t k, const std::function<void(const std::vector<std::size_t>&)>& fn)
{
    std::vector<std::size_t> idx;
    std::function<void(std::size_t)> rec = [&](std::size_t start) {
        if (idx.size() == k) {
            fn(idx);
            return;
        }
        for (std::size_t i = start; i + (k - idx.size()) <= n; ++i) {
            idx.push_back(i);
            rec(i + 1);
            idx.pop_back();
        }
    };
    rec(0);
}

bool scalars_collapse_bruteforce(const std::vector<Q>& a, std::size_t k)
{
    bool ok = true;
    for_each_subset(a.size(), k, [&](const std::vector<std::size_t>& s) {
        Q sum = 0;
        for (auto i : s) {
            sum += a[i];
        }
        if (sum > 1 || sum < -1) {
            ok = false;
        }
    });
    return ok;
}

Q abs_q(const Q& x)
{
    return x < 0 ? Q(-x) : x;
}

// ---------------------------------------------------------------------------

Outcome criterion1()
{
    struct Printed
    {
        int k;
        double gamma;
        const char* rank;
        const char* bm;
        const char* greedy;
    };
    const Printed printed[] = {
        {2, 1.0, "4", "2", "1.02"},
        {3, 0.3541686, "2.178", "1.667", "1.0102"},
        {4, 0.1854203, "1.673", "1.5", "1.0061"},
        {5, 0.1149225, "1.448", "1.4", "1.0041"},
        {6, 0.0784510, "1.325", "1.334", "1.0029"},
        {7, 0.0570503, "1.249", "1.286", "1.0022"},
        {8, 0.0433914, "1.198", "1.25", "1.0017"},
        {9, 0.0341301, "1.162", "1.223", "1.0013"},
    };
    Outcome o;
    auto rows = table1(2, 9);
    if (rows.size() != 8) {
        o.fail(cat("expected 8 rows, got ", rows.size()));
        return o;
    }
    for (std::size_t i = 0; i < 8; ++i) {
        const auto& p = printed[i];
        const auto& r = rows[i];
        if (r.k != p.k || std::fabs(r.gamma - p.gamma) > 1e-6) {
            o.fail(cat("gamma_", p.k, " = ", r.gamma, ", printed ", p.gamma));
        }
        if (r.rank_base != p.rank || r.bm_base != p.bm || r.greedy_base != p.greedy) {
            o.fail(cat("k=", p.k, ": got ", r.rank_base, "/", r.bm_base, "/", r.greedy_base));
        }
    }
    if (o.pass) {
        o.detail = "8 rows match the printed table";
    }
    return o;
}

Outcome criterion2()
{
    Outcome o;
    const double e = std::exp(1.0);
    double prev = 2.0;
    for (int k = 2; k <= 100; ++k) {
        double g = gamma_k(k).gamma;
        double lo = e / (k * k), hi = e / (k * k - e);
        if (!(lo < g && g < hi)) {
            o.fail(cat("k=", k, ": ", lo, " < ", g, " < ", hi, " fails"));
        }
        if (!(g < prev)) {
            o.fail(cat("not decreasing at k=", k));
        }
        prev = g;
    }
    if (o.pass) {
        o.detail = "k = 2..100 bracketed and strictly decreasing";
    }
    return o;
}

Outcome criterion3()
{
    Outcome o;
    int cases = 0;
    for (int m = 4; m <= 12; ++m) {
        for (int k = 2; k <= m - 2; ++k) {
            auto r = vertex_oracle(m, k, 2, true);
            ++cases;
            if (r.value != 1) {
                o.fail(cat("m=", m, " k=", k, ": oracle value ", format_rational(r.value)));
                continue;
            }
            std::vector<Q> expect(static_cast<std::size_t>(m - 1), Q(0));
            expect.back() = -1;
            if (!r.vertex || *r.vertex != expect) {
                o.fail(cat("m=", m, " k=", k, ": argmax is not (0,...,0,-1)"));
            }
            if (max_sq_balanced(m, k).value != 1) {
                o.fail(cat("m=", m, " k=", k, ": closed form is not 1"));
            }
        }
    }
    if (o.pass) {
        o.detail = cat(cases, " (m, k) pairs, all equal to 1 at (0,...,0,-1)");
    }
    return o;
}

Outcome criterion4()
{
    Outcome o;
    int exact = 0, bounded = 0;
    for (int m = 4; m <= 12; ++m) {
        for (int k = 2; k <= m - 2; ++k) {
            for (int p = 1; p <= 3; ++p) {
                const bool equality = p == 1 ? 3 * k < 2 * m : 2 * k <= m + 1;
                if (p >= 2 && !equality) {
                    continue;
                }
                auto closed = max_pow_general(m, k, p);
                auto oracle = vertex_oracle(m, k, p, false);
                if (equality) {
                    ++exact;
                    if (closed.exactness != Exactness::Exact || closed.value != oracle.value) {
                        o.fail(cat("m=", m, " k=", k, " p=", p, ": closed ", format_rational(closed.value),
                                   " vs oracle ", format_rational(oracle.value)));
                    }
                } else {
                    ++bounded;
                    if (closed.exactness != Exactness::UpperBoundOnly || oracle.value > closed.value) {
                        o.fail(cat("m=", m, " k=", k, ": oracle ", format_rational(oracle.value),
                                   " exceeds bound ", format_rational(closed.value)));
                    }
                }
            }
        }
    }
    if (o.pass) {
        o.detail = cat(exact, " exact matches, ", bounded, " cases within the upper bound");
    }
    return o;
}

Outcome criterion5()
{
    Outcome o;
    for (std::size_t d = 1; d <= 8; ++d) {
        Matrix<Q> a(2 * d, 2 * d);
        for (std::size_t b = 0; b < d; ++b) {
            a(2 * b, 2 * b) = 1;
            a(2 * b + 1, 2 * b + 1) = 1;
            a(2 * b, 2 * b + 1) = -1;
            a(2 * b + 1, 2 * b) = -1;
        }
        auto cert = rank_certificate(a);
        const Q dq = static_cast<long>(d);
        if (cert.rank_lower_bound != dq || cert.rank != d || !cert.equality_case) {
            o.fail(cat("block matrix d=", d, ": bound ", format_rational(cert.rank_lower_bound), " rank ", cert.rank));
        }
        // The same matrix must come out of the Gram construction for the cross family.
        auto g = gram_from_family(linf_cross(d));
        if (g.rows() != a.rows() || rank_certificate(g).rank != d) {
            o.fail(cat("cross family Gram differs for d=", d));
        } else {
            for (std::size_t i = 0; i < a.rows(); ++i) {
                for (std::size_t j = 0; j < a.cols(); ++j) {
                    if (g(i, j) != a(i, j)) {
                        o.fail(cat("cross family Gram entry differs for d=", d));
                    }
                }
            }
        }
    }
    std::mt19937_64 rng(20240501);
    std::uniform_int_distribution<int> size(1, 8), entry(-4, 4), inner(1, 8);
    int exact_violations = 0, float_violations = 0;
    double worst = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        const auto n = static_cast<std::size_t>(size(rng));
        // Half of the samples are products of thin factors, so low rank is common.
        const auto r = trial % 2 ? n : static_cast<std::size_t>(std::min<int>(static_cast<int>(n), inner(rng) % 4 + 1));
        Matrix<Q> left(n, r), right(r, n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < r; ++j) {
                left(i, j) = entry(rng);
                right(j, i) = entry(rng);
            }
        }
        Matrix<Q> a = left * right;
        Q trace = 0, frob = 0;
        Matrix<double> af(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            trace += a(i, i);
            for (std::size_t j = 0; j < n; ++j) {
                frob += a(i, j) * a(i, j);
                af(i, j) = a(i, j).get_d();
            }
        }
        const std::size_t rank = matrix_rank(a);
        if (trace * trace > Q(static_cast<long>(rank)) * frob) {
            ++exact_violations;
        }
        auto cq = rank_certificate(a);
        if (cq.rank != rank) {
            ++exact_violations;
        }
        auto cf = rank_certificate(af);
        const double lhs = cf.trace * cf.trace;
        const double rhs = static_cast<double>(cf.rank) * cf.frobenius_sq;
        if (lhs > rhs) {
            const double slack = (lhs - rhs) / std::max(1.0, rhs);
            worst = std::max(worst, slack);
            if (slack > 1e-9) {
                ++float_violations;
            }
        }
    }
    if (exact_violations || float_violations) {
        o.fail(cat(exact_violations, " exact and ", float_violations, " float violations"));
    }
    if (o.pass) {
        o.detail = cat("d = 1..8 equality, 1000 random matrices, worst float slack ", worst);
    }
    return o;
}

Outcome criterion6()
{
    Outcome o;
    std::mt19937_64 rng(77);
    std::uniform_int_distribution<int> dim(1, 4), size(2, 30), power(1, 3), entry(-3, 3);
    std::size_t tight = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const auto d = static_cast<std::size_t>(dim(rng));
        const auto m = static_cast<std::size_t>(size(rng));
        const auto p = static_cast<unsigned>(power(rng));
        Matrix<Q> left(m, d), right(d, m);
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = 0; j < d; ++j) {
                left(i, j) = entry(rng);
                right(j, i) = entry(rng);
            }
        }
        Matrix<Q> a = left * right;
        Matrix<Q> h(m, m);
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = 0; j < m; ++j) {
                Q v = 1;
                for (unsigned t = 0; t < p; ++t) {
                    v *= a(i, j);
                }
                h(i, j) = v;
            }
        }
        const std::size_t rh = matrix_rank(h);
        const mpz_class bound = binomial(static_cast<unsigned long>(p + d - 1), p);
        if (mpz_class(static_cast<unsigned long>(rh)) > bound) {
            o.fail(cat("trial ", trial, ": rank ", rh, " > C(", p + d - 1, ",", p, ")"));
        }
        if (matrix_rank(hadamard_power(a, p)) != rh) {
            o.fail(cat("trial ", trial, ": library Hadamard power disagrees"));
        }
        if (mpz_class(static_cast<unsigned long>(rh)) == bound) {
            ++tight;
        }
    }
    if (o.pass) {
        o.detail = cat("200 matrices within the bound (", tight, " attain it)");
    }
    return o;
}

// Linear image of a family: vectors T x, with the norm transported so that
// T is an isometry.
VectorFamily<Q> transported(const VectorFamily<Q>& f, const Matrix<Q>& t)
{
    const std::size_t d = f.space().dim();
    std::vector<Vec<Q>> ident;
    for (std::size_t i = 0; i < d; ++i) {
        Vec<Q> e(d, Q(0));
        e[i] = 1;
        ident.push_back(e);
    }
    std::vector<Vec<Q>> inv_cols;
    for (const auto& e : ident) {
        auto c = solve_square(t, e);
        if (!c) {
            throw InvariantError("transport matrix is singular");
        }
        inv_cols.push_back(*c);
    }
    // Row i of T^{-1} is (inv_cols[0][i], ..., inv_cols[d-1][i]).
    auto pull_back = [&](const Vec<Q>& y) {
        Vec<Q> out(d, Q(0));
        for (std::size_t c = 0; c < d; ++c) {
            for (std::size_t i = 0; i < d; ++i) {
                out[c] += y[i] * inv_cols[c][i];
            }
        }
        return out;
    };
    std::vector<Vec<Q>> xs;
    for (const auto& x : f.vectors()) {
        xs.push_back(t * x);
    }
    const auto& s = f.space();
    switch (s.kind()) {
    case NormKind::Linf: {
        std::vector<Vec<Q>> fs;
        for (const auto& e : ident) {
            fs.push_back(pull_back(e));
        }
        return VectorFamily<Q>(NormSpace::slab(fs), xs);
    }
    case NormKind::Slab: {
        std::vector<Vec<Q>> fs;
        for (const auto& y : s.functionals()) {
            fs.push_back(pull_back(y));
        }
        std::vector<SlabCap> caps;
        for (const auto& c : s.caps()) {
            caps.push_back(SlabCap{pull_back(c.direction), c.bound});
        }
        return VectorFamily<Q>(NormSpace::slab(fs, caps), xs);
    }
    case NormKind::VPolytope: {
        std::vector<Vec<Q>> vs;
        for (const auto& v : s.vertices()) {
            vs.push_back(t * v);
        }
        return VectorFamily<Q>(NormSpace::vpolytope(vs), xs);
    }
    default:
        return f;
    }
}

Outcome criterion7()
{
    Outcome o;
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> small(-2, 2);
    int balanced_cases = 0, scaled_cases = 0;
    for (int seed = 0; seed < 20; ++seed) {
        std::optional<VectorFamily<Q>> base;
        int k = 2;
        bool balanced = false;
        const std::size_t d = 2 + static_cast<std::size_t>(seed % 3);
        switch (seed % 4) {
        case 0:
            base = linf_cross(d);
            k = 2 + seed % static_cast<int>(2 * d - 2);
            balanced = true;
            break;
        case 1:
            base = fixture_Y(d);
            k = static_cast<int>(d);
            balanced = true;
            break;
        case 2: {
            const std::size_t kk = 2 + static_cast<std::size_t>(seed) % d;
            base = VectorFamily<Q>(pk_polytope_norm(d, kk), linf_cross(d).vectors());
            k = static_cast<int>(kk);
            balanced = true;
            break;
        }
        default: {
            auto set = greedy_unit_vectors(4 + d, 0.2, static_cast<std::uint64_t>(seed), 2000, 5);
            base = lift_almost_orthogonal(set, 2).family;
            k = 2;
            break;
        }
        }
        // Scale by 1/margin so that norms exceed 1 whenever the family has slack.
        auto rep = check_k_collapsing(*base, k);
        if (!rep.holds) {
            o.fail(cat("seed ", seed, ": base family is not ", k, "-collapsing"));
            continue;
        }
        Q scale = 1;
        if (!rep.margin_squared && rep.margin > 0 && rep.margin < 1) {
            scale = 1 / rep.margin;
            ++scaled_cases;
        }
        std::vector<Vec<Q>> scaled_vectors;
        for (const auto& x : base->vectors()) {
            scaled_vectors.push_back(scaled(x, scale));
        }
        VectorFamily<Q> family(base->space(), scaled_vectors);
        if (family.space().kind() != NormKind::L1Subspace) {
            const std::size_t n = family.space().dim();
            Matrix<Q> t;
            do {
                t = Matrix<Q>::identity(n);
                for (std::size_t i = 0; i < n; ++i) {
                    for (std::size_t j = 0; j < n; ++j) {
                        t(i, j) += small(rng);
                    }
                }
            } while (matrix_rank(t) != n);
            family = transported(family, t);
        }
        for (const auto& x : family.vectors()) {
            if (norm_eval(family.space(), x) < 1) {
                o.fail(cat("seed ", seed, ": a norm dropped below 1"));
            }
        }
        if (!check_k_collapsing(family, k).holds) {
            o.fail(cat("seed ", seed, ": transported family lost the collapsing property"));
            continue;
        }
        auto gram = gram_from_family(family);
        auto normal = row_normalize(gram);
        auto unit = family_from_matrix(normal, family.space().dim());
        for (const auto& x : unit.vectors()) {
            if (norm_eval(unit.space(), x) != 1) {
                o.fail(cat("seed ", seed, ": normalized vector without unit norm"));
            }
        }
        if (!check_rows(normal, k) || !check_k_collapsing(unit, k).holds) {
            o.fail(cat("seed ", seed, ": normalized family is not ", k, "-collapsing"));
        }
        if (balanced) {
            ++balanced_cases;
            if (!check_strong_balancing(family).holds || !check_strong_balancing(unit).holds) {
                o.fail(cat("seed ", seed, ": strong balancing not preserved"));
            }
        }
    }
    if (o.pass) {
        o.detail = cat("20 families (", balanced_cases, " balanced, ", scaled_cases, " with norms > 1)");
    }
    return o;
}

Outcome criterion8()
{
    Outcome o;
    std::mt19937_64 rng(9);
    std::size_t full_pairs = 0, sampled_pairs = 0;
    for (unsigned q : {2u, 3u, 4u, 5u, 7u, 8u, 9u}) {
        for (unsigned s = 1; s <= std::min(3u, q - 1); ++s) {
            auto set = polynomial_vectors(q, s);
            std::size_t expect = 1;
            for (unsigned i = 0; i <= s; ++i) {
                expect *= q;
            }
            // Integer copies of the raw (q-1) M(p) vectors for fast pairing.
            std::vector<std::vector<long>> raw;
            std::set<std::vector<long>> distinct;
            for (const auto& v : set.vectors) {
                std::vector<long> r;
                for (const auto& x : v) {
                    if (x.get_den() != 1) {
                        o.fail("non-integer raw entry");
                    }
                    r.push_back(x.get_num().get_si());
                }
                distinct.insert(r);
                raw.push_back(std::move(r));
            }
            if (raw.size() != expect || distinct.size() != expect) {
                o.fail(cat("q=", q, " s=", s, ": ", distinct.size(), " distinct of ", raw.size()));
            }
            const Q qq = static_cast<long>(q);
            const Q lo = Q(-1) / (qq - 1), hi = Q(static_cast<long>(s) - 1) / (qq - 1);
            const Q self = qq * qq / (qq - 1);
            auto check_pair = [&](std::size_t i, std::size_t j) {
                long dot = 0;
                long agree = 0;
                for (std::size_t c = 0; c < raw[i].size(); ++c) {
                    dot += raw[i][c] * raw[j][c];
                    agree += raw[i][c] > 0 && raw[j][c] > 0;
                }
                // <M(p_i), M(p_j)> with M = raw / (q - 1).
                Q m_dot = Q(dot) / ((qq - 1) * (qq - 1));
                if (i == j) {
                    if (m_dot != self) {
                        o.fail(cat("q=", q, ": self product ", format_rational(m_dot)));
                    }
                    return;
                }
                Q g = set.scale_sq * Q(dot);
                if (g < lo || g > hi || g != Q(agree - 1) / (qq - 1)) {
                    o.fail(cat("q=", q, " s=", s, ": Gram ", format_rational(g), " out of range"));
                }
            };
            const std::size_t n = raw.size();
            for (std::size_t i = 0; i < n; ++i) {
                check_pair(i, i);
            }
            if (q <= 5) {
                for (std::size_t i = 0; i < n; ++i) {
                    for (std::size_t j = i + 1; j < n; ++j) {
                        check_pair(i, j);
                        ++full_pairs;
                    }
                }
            } else {
                std::uniform_int_distribution<std::size_t> pick(0, n - 1);
                for (int t = 0; t < 100000; ++t) {
                    std::size_t i = pick(rng), j = pick(rng);
                    if (i == j) {
                        continue;
                    }
                    check_pair(i, j);
                    ++sampled_pairs;
                }
            }
        }
    }
    if (o.pass) {
        o.detail = cat(full_pairs, " pairs checked in full, ", sampled_pairs, " sampled");
    }
    return o;
}

Outcome criterion9()
{
    Outcome o;
    auto lifted = lift_almost_orthogonal(polynomial_vectors(7, 1), 2);
    const auto& f = lifted.family;
    if (f.size() != 49 || f.space().dim() != 43 || f.space().kind() != NormKind::Slab) {
        o.fail(cat("expected 49 vectors in a 43-dimensional slab space, got ", f.size(), " in ", f.space().dim()));
        return o;
    }
    std::size_t pairs = 0;
    Q worst = 0;
    for (std::size_t i = 0; i < 49; ++i) {
        if (norm_eval(f.space(), f[i]) != 1) {
            o.fail(cat("vector ", i + 1, " is not a unit vector"));
        }
        for (std::size_t j = 0; j < 49; ++j) {
            if (i == j) {
                continue;
            }
            Q v = dot(f[i], lifted.functionals[j]);
            if (v < Q(-1, 2) || v > 0) {
                o.fail(cat("<x_", i + 1, ", y_", j + 1, "> = ", format_rational(v)));
            }
            if (j > i) {
                Q n = norm_eval(f.space(), add(f[i], f[j]));
                worst = std::max(worst, n);
                ++pairs;
                if (n > 1) {
                    o.fail(cat("pair (", i + 1, ", ", j + 1, ") has norm ", format_rational(n)));
                }
            }
        }
    }
    if (o.pass) {
        o.detail = cat(pairs, " pair sums, largest gauge ", format_rational(worst));
    }
    return o;
}

bool in_newthm_list(int k, int d)
{
    if (d == 2) {
        return k >= 2;
    }
    if (d >= 3 && d <= 5) {
        return k >= 3;
    }
    if (d == 6) {
        return (k >= 3 && k <= 10) || k >= 17;
    }
    if (d == 7) {
        return (k >= 3 && k <= 12) || k >= 41;
    }
    return false;
}

Outcome criterion10()
{
    Outcome o;
    int listed = 0;
    for (int k = 2; k <= 40; ++k) {
        for (int d = 2; d <= 40; ++d) {
            auto b = best_bounds(k, d);
            if (b.best_lower > b.best_upper) {
                o.fail(cat("(k, d) = (", k, ", ", d, "): lower ", b.best_lower.get_str(), " > upper ",
                           b.best_upper.get_str()));
            }
            if (in_newthm_list(k, d)) {
                ++listed;
                const long expect = std::max(k + 1, 2 * d);
                if (!b.exact || *b.exact != expect) {
                    o.fail(cat("(k, d) = (", k, ", ", d, "): exact value missing or not ", expect));
                }
            }
        }
    }
    for (int k = 6; k <= 17; ++k) {
        auto r = ub_rankthm2(k, 10);
        auto b = best_bounds(k, 10);
        if (!r.applicable || r.kind != BoundKind::Exact || !r.value || *r.value != 20 || !b.exact || *b.exact != 20) {
            o.fail(cat("d=10, k=", k, ": exact 20 not derived"));
        }
    }
    if (o.pass) {
        o.detail = cat("1521 grid points consistent, ", listed, " listed exact values, d=10 range gives 20");
    }
    return o;
}

Q l1(const Vec<Q>& v)
{
    Q s = 0;
    for (const auto& x : v) {
        s += abs_q(x);
    }
    return s;
}

Outcome criterion11()
{
    Outcome o;
    for (std::size_t d = 2; d <= 10; ++d) {
        const Q dq = static_cast<long>(d);
        for (const Q& eps : {Q(1, 10), Q(1, 100)}) {
            auto f = fixture_X(d, eps);
            Q diam = 0;
            Vec<Q> sum(d + 1, Q(0));
            for (std::size_t i = 0; i < d; ++i) {
                if (norm_eval(f.space(), f[i]) != 1 || l1(f[i]) != 1) {
                    o.fail(cat("X: d=", d, " vector ", i + 1, " is not a unit vector"));
                }
                sum = add(sum, f[i]);
                for (std::size_t j = i + 1; j < d; ++j) {
                    diam = std::max(diam, l1(subtract(f[i], f[j])));
                }
            }
            Q centroid = l1(sum) / dq;
            if (diam != 1 + 1 / dq - eps || centroid != 1 / (dq * dq) + (1 - 1 / dq) * eps) {
                o.fail(cat("X: d=", d, " eps=", format_rational(eps), ": diameter ", format_rational(diam),
                           ", centroid ", format_rational(centroid)));
            }
            auto dc = diameter_centroid_check(f);
            if (dc.diameter != diam || dc.centroid_norm != centroid) {
                o.fail(cat("X: d=", d, ": library diameter/centroid disagree"));
            }
        }
        auto y = fixture_Y(d);
        Vec<Q> sum(d + 1, Q(0));
        for (std::size_t i = 0; i <= d; ++i) {
            if (norm_eval(y.space(), y[i]) != 1 || l1(y[i]) != 1) {
                o.fail(cat("Y: d=", d, " vector ", i + 1, " is not a unit vector"));
            }
            sum = add(sum, y[i]);
            for (std::size_t j = i + 1; j <= d; ++j) {
                if (norm_eval(y.space(), subtract(y[i], y[j])) != 1 + 1 / dq) {
                    o.fail(cat("Y: d=", d, " pair distance differs"));
                }
            }
        }
        if (std::any_of(sum.begin(), sum.end(), [](const Q& x) { return x != 0; })) {
            o.fail(cat("Y: d=", d, " sum is not zero"));
        }
    }
    if (o.pass) {
        o.detail = "d = 2..10 exact";
    }
    return o;
}

bool independent_equitable(const SimpleGraph& g, int k, const std::vector<int>& color)
{
    if (color.size() != g.size()) {
        return false;
    }
    std::map<int, std::size_t> count;
    for (int c = 0; c < k; ++c) {
        count[c] = 0;
    }
    for (std::size_t v = 0; v < g.size(); ++v) {
        if (color[v] < 0 || color[v] >= k) {
            return false;
        }
        ++count[color[v]];
        for (auto u : g.neighbors(v)) {
            if (color[u] == color[v]) {
                return false;
            }
        }
    }
    std::size_t lo = g.size(), hi = 0;
    for (auto& [c, n] : count) {
        lo = std::min(lo, n);
        hi = std::max(hi, n);
    }
    return hi - lo <= 1;
}

Outcome criterion12()
{
    Outcome o;
    std::mt19937_64 rng(1234);
    std::uniform_int_distribution<int> kd(3, 8);
    std::uniform_int_distribution<std::size_t> nd(1, 120);
    int fallbacks = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const int k = kd(rng);
        const std::size_t n = nd(rng);
        const std::size_t cap = static_cast<std::size_t>(k - 2);
        SimpleGraph g(n);
        if (n > 1) {
            std::uniform_int_distribution<std::size_t> pick(0, n - 1);
            for (std::size_t a = 0; a < n * cap * 2; ++a) {
                auto u = pick(rng), v = pick(rng);
                if (u != v && g.degree(u) < cap && g.degree(v) < cap) {
                    g.add_edge(u, v);
                }
            }
        }
        auto c = equitable_coloring(g, k);
        fallbacks += c.fallback_used;
        if (!independent_equitable(g, k, c.color)) {
            o.fail(cat("trial ", trial, " (n=", n, ", k=", k, ") is not equitable"));
        }
    }
    if (o.pass) {
        o.detail = cat("100 graphs, exhaustive fallback used ", fallbacks, " times");
    }
    return o;
}

Outcome criterion13()
{
    Outcome o;
    struct Case
    {
        std::size_t d;
        int k;
        std::size_t expect;
    };
    std::string sizes;
    for (auto c : {Case{2, 2, 4}, Case{2, 3, 4}, Case{3, 2, 6}, Case{3, 4, 6}}) {
        auto cand = linf_sign_vectors(c.d);
        auto r = bnb_max_subfamily(cand, c.k);
        std::vector<Vec<Q>> chosen;
        for (int i : r.indices) {
            chosen.push_back(cand[static_cast<std::size_t>(i)]);
        }
        VectorFamily<Q> sub(cand.space(), chosen);
        if (r.indices.size() != c.expect || !check_k_collapsing(sub, c.k).holds) {
            o.fail(cat("d=", c.d, " k=", c.k, ": size ", r.indices.size(), ", expected ", c.expect));
        }
        if (static_cast<std::size_t>(std::max<long>(c.k + 1, 2 * static_cast<long>(c.d))) < r.indices.size()) {
            o.fail(cat("d=", c.d, " k=", c.k, ": exceeds max{k+1, 2d}"));
        }
        sizes += (sizes.empty() ? "" : ", ") + std::to_string(r.indices.size());
    }
    if (o.pass) {
        o.detail = "sizes " + sizes;
    }
    return o;
}

Outcome criterion14()
{
    Outcome o;
    std::mt19937_64 rng(14);
    std::uniform_int_distribution<int> md(4, 10), small(-8, 8), large(8, 16), coin(0, 3);
    int families = 0, nonvacuous = 0;
    long attempts = 0;
    while (families < 10000) {
        ++attempts;
        const int m = md(rng);
        std::uniform_int_distribution<int> kd(2, m - 2);
        const int k = kd(rng);
        std::vector<Q> a(static_cast<std::size_t>(m));
        for (auto& x : a) {
            x = Q(small(rng), 8);
            x.canonicalize();
        }
        // Plant an entry of absolute value >= 1 most of the time.
        if (coin(rng) != 0) {
            Q big(large(rng), 8);
            big.canonicalize();
            a[0] = coin(rng) % 2 ? big : Q(-big);
        }
        // Cheap filter: only the k largest and k smallest sums matter.
        std::vector<Q> sorted = a;
        std::sort(sorted.begin(), sorted.end());
        Q low = std::accumulate(sorted.begin(), sorted.begin() + k, Q(0));
        Q high = std::accumulate(sorted.end() - k, sorted.end(), Q(0));
        if (low < -1 || high > 1) {
            continue;
        }
        if (!scalars_collapse_bruteforce(a, static_cast<std::size_t>(k))) {
            o.fail("sorted filter accepted a family that enumeration rejects");
            continue;
        }
        ++families;
        bool has_big = false;
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (abs_q(a[i]) < 1) {
                continue;
            }
            has_big = true;
            for (std::size_t j = 0; j < a.size(); ++j) {
                if (j != i && abs_q(a[j]) > 2 - abs_q(a[i])) {
                    o.fail(cat("family ", families, ": |a_j| > 2 - |a_i|"));
                }
            }
        }
        nonvacuous += has_big;
        if (!normalisation_check(Vec<Q>(a.begin(), a.end()), k).holds) {
            o.fail(cat("family ", families, ": library check disagrees"));
        }
    }
    for (int m = 5; m <= 12; ++m) {
        auto t = counterexample_tuple(m);
        std::vector<Q> a(t.begin(), t.end());
        int above = static_cast<int>(std::count_if(a.begin(), a.end(), [](const Q& x) { return x > 1; }));
        if (!scalars_collapse_bruteforce(a, static_cast<std::size_t>(m - 1)) || above != 2) {
            o.fail(cat("counterexample m=", m, " fails"));
        }
        if (normalisation_violations(t).holds) {
            o.fail(cat("counterexample m=", m, " does not violate the conclusion"));
        }
    }
    if (o.pass) {
        o.detail = cat("10000 families (", nonvacuous, " with an entry >= 1, ", attempts,
                       " samples), counterexamples m = 5..12");
    }
    return o;
}

} // namespace

int main()
{
    struct Criterion
    {
        int id;
        const char* name;
        double limit_seconds;
        Outcome (*run)();
    };
    const Criterion criteria[] = {
        {1, "table of gamma_k and growth bases", 1, criterion1},
        {2, "gamma_k bracket and monotonicity", 1, criterion2},
        {3, "balanced simplex maximum equals the oracle", 60, criterion3},
        {4, "general simplex maxima match the oracle", 300, criterion4},
        {5, "trace/Frobenius rank inequality", 10, criterion5},
        {6, "Hadamard power rank bound", 30, criterion6},
        {7, "normalisation through the matrix form", 60, criterion7},
        {8, "polynomial almost-orthogonal vectors", 120, criterion8},
        {9, "lifted 49-vector family in dimension 43", 60, criterion9},
        {10, "bounds consistency grid", 10, criterion10},
        {11, "diameter and centroid fixtures", 10, criterion11},
        {12, "equitable colourings", 30, criterion12},
        {13, "sign-vector branch and bound", 120, criterion13},
        {14, "scalar normalisation property", 30, criterion14},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = c.run();
        } catch (const std::exception& e) {
            out.fail(std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (out.pass && secs > c.limit_seconds) {
            out.fail(cat("took ", secs, " s, limit ", c.limit_seconds, " s"));
        }
        failures += !out.pass;
        char timing[32];
        std::snprintf(timing, sizeof timing, "%.2fs", secs);
        std::cout << "criterion " << c.id << ": " << (out.pass ? "PASS" : "FAIL") << "  " << c.name << " -- "
                  << out.detail << " (" << timing << ")" << std::endl;
    }
    std::cout << (failures ? "FAILED: " : "all criteria passed") << (failures ? std::to_string(failures) : "")
              << std::endl;
    return failures ? 1 : 0;
}
