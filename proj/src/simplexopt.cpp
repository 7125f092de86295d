#include "kcollapse/simplexopt.hpp"

#include <algorithm>

#include "kcollapse/errors.hpp"
#include "kcollapse/matrix.hpp"

namespace kcollapse {

namespace {

Rational rpow(const Rational& x, int e)
{
    Rational r = 1;
    for (int i = 0; i < e; ++i) {
        r *= x;
    }
    return r;
}

struct Candidate
{
    Rational value;
    std::vector<Rational> vertex;
};

// Largest value; ties go to the lexicographically greatest vertex.
bool better(const Candidate& a, const Candidate& b)
{
    if (a.value != b.value) {
        return a.value > b.value;
    }
    return std::lexicographical_compare(b.vertex.begin(), b.vertex.end(), a.vertex.begin(), a.vertex.end());
}

std::vector<Rational> blocks(int t, const Rational& a, int rest, const Rational& b)
{
    std::vector<Rational> v(static_cast<std::size_t>(t), a);
    v.insert(v.end(), static_cast<std::size_t>(rest), b);
    return v;
}

void check_range(int m, int k)
{
    if (k < 2 || k > m - 2) {
        throw UsageError("need 2 <= k <= m-2, got m=" + std::to_string(m) + ", k=" + std::to_string(k));
    }
}

} // namespace

std::string exactness_name(Exactness e)
{
    return e == Exactness::Exact ? "exact" : "upper_bound_only";
}

Rational power_sum(const std::vector<Rational>& alpha, int p)
{
    Rational s = 0;
    for (const auto& a : alpha) {
        s += rpow(a, 2 * p);
    }
    return s;
}

OptResult max_sq_balanced(int m, int k)
{
    check_range(m, k);
    OptResult r;
    r.value = 1;
    r.vertex = blocks(m - 2, Rational(0), 1, Rational(-1));
    r.unique = true;
    return r;
}

OptResult max_pow_general(int m, int k, int p)
{
    check_range(m, k);
    if (p < 1) {
        throw UsageError("power p must be positive");
    }
    if (p >= 2 && 2 * k > m + 1) {
        throw UsageError("for p >= 2 the closed form needs k <= (m+1)/2");
    }
    const Rational kq = k;
    std::vector<Candidate> cands;
    // (0, ..., 0, -1)
    cands.push_back({Rational(1), blocks(m - 2, Rational(0), 1, Rational(-1))});
    // all entries -1/k
    {
        auto v = blocks(m - 1, Rational(-1, k), 0, Rational(0));
        cands.push_back({power_sum(v, p), v});
    }
    // one large entry (k-2)/k, the rest -1/k; needs k >= 3 and m-k >= 2
    if (k >= 3) {
        Rational a = Rational(k - 2) / kq;
        a.canonicalize();
        auto v = blocks(1, a, m - 2, Rational(-1, k));
        cands.push_back({power_sum(v, p), v});
    }
    auto best = std::min_element(cands.begin(), cands.end(), better);
    OptResult r;
    r.value = best->value;
    r.vertex = best->vertex;

    if (p == 1 && 3 * k >= 2 * m) {
        Rational term = Rational((k - 1) * (k - 1)) / Rational(4 * (m - k - 1) * (2 * k - m) * (m - k));
        term.canonicalize();
        Rational t0 = Rational((k - 1) * (k - 1) * (m - k - 1)) / Rational(2 * (2 * k - m - 1) * (m - k - 1) + k - 1);
        t0.canonicalize();
        r.t0 = t0;
        r.exactness = Exactness::UpperBoundOnly;
        if (term > r.value) {
            r.value = term;
            r.vertex.reset();
        }
    }
    return r;
}

OptResult vertex_oracle(int m, int k, int p, bool balanced)
{
    check_range(m, k);
    if (p < 1) {
        throw UsageError("power p must be positive");
    }
    if (m > kOracleMaxM) {
        throw BudgetExceeded("vertex oracle is limited to m <= " + std::to_string(kOracleMaxM));
    }
    const int n = m - 1;
    // Inequalities row . alpha >= rhs.
    std::vector<Vec<Rational>> rows;
    std::vector<Rational> rhs;
    for (int i = 0; i + 1 < n; ++i) {
        Vec<Rational> r(n, Rational(0));
        r[i] = 1;
        r[i + 1] = -1;
        rows.push_back(r);
        rhs.push_back(0);
    }
    int kk = balanced ? std::min(k, m - k) : k;
    {
        // -(alpha_1 + ... + alpha_{k-1}) >= 0
        Vec<Rational> r(n, Rational(0));
        for (int i = 0; i < kk - 1; ++i) {
            r[i] = -1;
        }
        rows.push_back(r);
        rhs.push_back(0);
    }
    if (!balanced) {
        // alpha_{m-k} + ... + alpha_{m-1} >= -1
        Vec<Rational> r(n, Rational(0));
        for (int i = m - k - 1; i < n; ++i) {
            r[i] = 1;
        }
        rows.push_back(r);
        rhs.push_back(-1);
    }
    const std::size_t nc = rows.size();
    std::vector<Candidate> found;
    for (std::size_t drop = 0; drop < nc; ++drop) {
        std::vector<Vec<Rational>> sys;
        Vec<Rational> b;
        for (std::size_t c = 0; c < nc; ++c) {
            if (c != drop) {
                sys.push_back(rows[c]);
                b.push_back(rhs[c]);
            }
        }
        if (balanced) {
            sys.push_back(Vec<Rational>(n, Rational(1)));
            b.push_back(-1);
        }
        auto sol = solve_square(Matrix<Rational>::from_rows(sys), b);
        if (!sol) {
            continue;
        }
        bool feasible = dot(rows[drop], *sol) >= rhs[drop];
        if (!feasible) {
            continue;
        }
        if (std::none_of(found.begin(), found.end(), [&](const Candidate& c) { return c.vertex == *sol; })) {
            found.push_back({power_sum(*sol, p), *sol});
        }
    }
    if (found.empty()) {
        throw InvariantError("constraint polytope has no vertices");
    }
    auto best = std::min_element(found.begin(), found.end(), better);
    OptResult r;
    r.value = best->value;
    r.vertex = best->vertex;
    r.unique = std::count_if(found.begin(), found.end(), [&](const Candidate& c) { return c.value == best->value; }) == 1;
    return r;
}

} // namespace kcollapse
