#include "doctest.h"

#include <bit>
#include <random>

#include "kcollapse/combinatorics.hpp"
#include "kcollapse/errors.hpp"
#include "kcollapse/family.hpp"

using namespace kcollapse;

namespace {

using Q = Rational;

std::vector<Vec<Q>> signed_basis(std::size_t d)
{
    std::vector<Vec<Q>> out;
    for (std::size_t i = 0; i < d; ++i) {
        Vec<Q> e(d, Q(0));
        e[i] = 1;
        out.push_back(e);
        e[i] = -1;
        out.push_back(e);
    }
    return out;
}

std::vector<Vec<Q>> sign_vectors(std::size_t d)
{
    std::vector<Vec<Q>> out;
    std::size_t total = 1;
    for (std::size_t i = 0; i < d; ++i) {
        total *= 3;
    }
    for (std::size_t code = 0; code < total; ++code) {
        Vec<Q> v(d);
        std::size_t c = code;
        bool nonzero = false;
        for (std::size_t i = 0; i < d; ++i) {
            v[i] = static_cast<long>(c % 3) - 1;
            nonzero = nonzero || v[i] != 0;
            c /= 3;
        }
        if (nonzero) {
            out.push_back(v);
        }
    }
    return out;
}

// Independent oracle: all k-subsets through bitmasks, sums from scratch.
template <Scalar T>
std::pair<std::optional<std::vector<int>>, T> brute_force(const VectorFamily<T>& f, int k)
{
    const int m = static_cast<int>(f.size());
    std::optional<std::vector<int>> witness;
    T worst = T(0);
    for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
        if (std::popcount(mask) != k) {
            continue;
        }
        Vec<T> s(f.space().ambient(), T(0));
        std::vector<int> idx;
        for (int i = 0; i < m; ++i) {
            if ((mask >> i) & 1u) {
                s = add(s, f[static_cast<std::size_t>(i)]);
                idx.push_back(i);
            }
        }
        T n = norm_eval(f.space(), s);
        worst = std::max(worst, n);
        if (less(T(1), n) && (!witness || idx < *witness)) {
            witness = idx;
        }
    }
    return {witness, worst};
}

Vec<Q> random_vec(std::mt19937_64& rng, std::size_t d)
{
    std::uniform_int_distribution<int> num(-6, 6);
    std::uniform_int_distribution<int> den(1, 4);
    Vec<Q> v(d);
    for (auto& x : v) {
        x = Q(num(rng), den(rng));
        x.canonicalize();
    }
    return v;
}

} // namespace

TEST_CASE("signed basis in l_inf is k-collapsing for every k <= 2d")
{
    for (std::size_t d = 2; d <= 4; ++d) {
        VectorFamily<Q> f(NormSpace::linf(d), signed_basis(d));
        for (int k = 1; k <= static_cast<int>(2 * d); ++k) {
            auto r = check_k_collapsing(f, k);
            CHECK(r.holds);
            CHECK_FALSE(r.witness);
        }
        CHECK(check_strong_balancing(f).holds);
    }
}

TEST_CASE("repeated vector violates with witness and margin")
{
    VectorFamily<Q> f(NormSpace::linf(2), {{1, 0}, {1, 0}});
    auto r = check_k_collapsing(f, 2);
    CHECK_FALSE(r.holds);
    REQUIRE(r.witness);
    CHECK(*r.witness == std::vector<int>{0, 1});
    CHECK(r.margin == 2);
    CHECK_THROWS_AS(check_k_collapsing(f, 3), UsageError);
}

TEST_CASE("revolving-door scan agrees with a brute-force oracle")
{
    std::mt19937_64 rng(11);
    std::vector<NormSpace> spaces = {NormSpace::linf(3), NormSpace::lp(3, 1.0),
                                     NormSpace::slab({{1, 0, 0}, {0, 1, 1}, {1, 1, -1}, {0, 0, 2}})};
    for (const auto& space : spaces) {
        for (int trial = 0; trial < 6; ++trial) {
            std::vector<Vec<Q>> vs;
            for (int i = 0; i < 9; ++i) {
                vs.push_back(scaled(random_vec(rng, 3), Q(1, 4)));
            }
            VectorFamily<Q> f(space, vs);
            for (int k = 1; k <= 9; ++k) {
                auto r = check_k_collapsing(f, k);
                auto [witness, worst] = brute_force(f, k);
                CHECK(r.witness == witness);
                CHECK(r.margin == worst);
                CHECK(r.subsets_checked == binomial_sat(9, static_cast<std::uint64_t>(k)));
            }
        }
    }
}

TEST_CASE("parallel scanning gives the same report as a serial scan")
{
    std::mt19937_64 rng(5);
    std::vector<Vec<Q>> vs;
    for (int i = 0; i < 18; ++i) {
        vs.push_back(scaled(random_vec(rng, 4), Q(1, 9)));
    }
    VectorFamily<Q> f(NormSpace::linf(4), vs);
    for (int k : {3, 5, 9}) {
        auto serial = check_k_collapsing(f, k);
        ScanOptions opts;
        opts.threads = 4;
        auto parallel = check_k_collapsing(f, k, opts);
        CHECK(serial.witness == parallel.witness);
        CHECK(serial.margin == parallel.margin);
        CHECK(serial.subsets_checked == parallel.subsets_checked);
    }
}

TEST_CASE("budget and sampling")
{
    VectorFamily<Q> f(NormSpace::linf(3), signed_basis(3));
    ScanOptions opts;
    opts.budget = 5;
    CHECK_THROWS_AS(check_k_collapsing(f, 3, opts), BudgetExceeded);
    opts.seed = 42;
    auto r = check_k_collapsing(f, 3, opts);
    CHECK(r.sampled);
    CHECK(r.holds);
    CHECK(r.subsets_checked == 5);
    auto again = check_k_collapsing(f, 3, opts);
    CHECK(again.margin == r.margin);
}

TEST_CASE("float backend uses the 1e-9 threshold")
{
    VectorFamily<double> f(NormSpace::linf(2), {{0.5 + 4e-10, 0.0}, {0.5 + 4e-10, 0.0}});
    CHECK(check_k_collapsing(f, 2).holds);
    VectorFamily<double> g(NormSpace::linf(2), {{0.5 + 1e-8, 0.0}, {0.5, 0.0}});
    CHECK_FALSE(check_k_collapsing(g, 2).holds);
}

TEST_CASE("full collapsing")
{
    VectorFamily<Q> pair(NormSpace::linf(2), {{1, 0}, {-1, 0}});
    CHECK(check_full_collapsing(pair).holds);
    for (std::size_t d = 1; d <= 8; ++d) {
        VectorFamily<Q> f(NormSpace::linf(d), signed_basis(d));
        CHECK(check_full_collapsing(f).holds);
    }
    VectorFamily<Q> tri(NormSpace::linf(2), {{1, 0}, {0, 1}, {Q(9, 10), Q(9, 10)}});
    auto r = check_full_collapsing(tri);
    CHECK_FALSE(r.holds);
    REQUIRE(r.witness);
    CHECK(*r.witness == std::vector<int>{0, 1, 2});
    CHECK(r.margin == Q(19, 10));
    std::vector<Vec<Q>> many(25, Vec<Q>{0, 0});
    CHECK_THROWS_AS(check_full_collapsing(VectorFamily<Q>(NormSpace::linf(2), many)), UsageError);
}

TEST_CASE("strong and weak balancing")
{
    CHECK_FALSE(check_strong_balancing(VectorFamily<Q>(NormSpace::linf(2), {{1, 0}, {1, 0}})).holds);
    CHECK(check_weak_balancing(VectorFamily<Q>(NormSpace::linf(2), {{1, 0}, {-1, 0}})).holds);
    CHECK_FALSE(check_weak_balancing(VectorFamily<Q>(NormSpace::linf(2), {{1, 0}, {0, 1}})).holds);
    CHECK_FALSE(check_weak_balancing(VectorFamily<Q>(NormSpace::linf(2), {{1, 0}, {-1, 0}, {0, 1}})).holds);
    auto tri = check_weak_balancing(VectorFamily<Q>(NormSpace::linf(2), {{1, 0}, {0, 1}, {-1, -1}}));
    CHECK(tri.holds);
    CHECK(tri.margin == Q(1, 3));
    VectorFamily<double> fl(NormSpace::lp(2, 2.0), {{0.1, 0.0}, {-0.1, 0.0}, {0.0, 0.3}, {0.0, -0.3}});
    CHECK(check_weak_balancing(fl).holds);
}

TEST_CASE("scalar collapsing and normalisation")
{
    CHECK(scalars_k_collapsing(Vec<Q>{1, -1, 0, 0}, 2));
    CHECK_FALSE(scalars_k_collapsing(Vec<Q>{1, 1, 0, 0}, 2));
    CHECK(normalisation_check(Vec<Q>{1, -1, 0, 0}, 2).holds);
    CHECK_THROWS_AS(normalisation_check(Vec<Q>{1, -1, 0, 0}, 3), PreconditionError);
    CHECK_THROWS_AS(normalisation_check(Vec<Q>{1, 1, 0, 0}, 2), PreconditionError);

    // (-2/3 x4, 5/3, 8/3) is often quoted here, but dropping a -2/3 leaves 7/3.
    Vec<Q> quoted{Q(-2, 3), Q(-2, 3), Q(-2, 3), Q(-2, 3), Q(5, 3), Q(8, 3)};
    CHECK_FALSE(scalars_k_collapsing(quoted, 5));
    Vec<Q> tuple{Q(-3, 5), Q(-3, 5), Q(-3, 5), Q(-3, 5), Q(7, 5), Q(7, 5)};
    CHECK(scalars_k_collapsing(tuple, 5));
    CHECK_FALSE(normalisation_violations(tuple).holds);

    // Random k-collapsing families always satisfy the conclusion.
    std::mt19937_64 rng(17);
    int accepted = 0;
    for (int trial = 0; trial < 4000; ++trial) {
        std::uniform_int_distribution<int> msize(4, 6);
        int m = msize(rng);
        std::uniform_int_distribution<int> kpick(2, m - 2);
        int k = kpick(rng);
        std::uniform_int_distribution<int> num(-5, 5);
        Vec<Q> v(static_cast<std::size_t>(m));
        for (auto& x : v) {
            x = Q(num(rng), 4);
            x.canonicalize();
        }
        if (!scalars_k_collapsing(v, k)) {
            continue;
        }
        ++accepted;
        CHECK(normalisation_check(v, k).holds);
    }
    CHECK(accepted > 100);
}

TEST_CASE("far partner check")
{
    VectorFamily<Q> pair(NormSpace::lp(2, 2.0), {{1, 0}, {-1, 0}});
    CHECK(far_partner_check(pair, {0, 1}));

    const double pi = std::acos(-1.0);
    std::vector<Vec<double>> tri;
    for (int i = 0; i < 3; ++i) {
        tri.push_back({std::cos(2 * pi * i / 3), std::sin(2 * pi * i / 3)});
    }
    VectorFamily<double> simplex(NormSpace::lp(2, 2.0), tri);
    CHECK(far_partner_check(simplex, {0, 1}));
    CHECK(far_partner_check(simplex, {1, 2}));
    CHECK(far_partner_check(simplex, {0, 2}));

    VectorFamily<Q> cross(NormSpace::linf(3), signed_basis(3));
    for (int i = 0; i < 6; ++i) {
        for (int j = i + 1; j < 6; ++j) {
            CHECK(far_partner_check(cross, {i, j}));
        }
    }
    VectorFamily<Q> same(NormSpace::linf(2), {{1, 0}, {1, 0}});
    CHECK_THROWS_AS(far_partner_check(same, {0, 1}), PreconditionError);
}

TEST_CASE("diameter and centroid of a single vector")
{
    auto r = diameter_centroid_check(VectorFamily<Q>(NormSpace::linf(2), {{1, 0}}));
    CHECK(r.diameter == 0);
    CHECK(r.centroid_norm == 1);
    CHECK(r.hypothesis_holds);
    CHECK(r.conclusion_holds);
}

TEST_CASE("branch and bound over sign vectors")
{
    VectorFamily<Q> c2(NormSpace::linf(2), sign_vectors(2));
    auto r22 = bnb_max_subfamily(c2, 2);
    CHECK(r22.indices.size() == 4);
    CHECK(bnb_max_subfamily(c2, 3).indices.size() == 4);

    VectorFamily<Q> c3(NormSpace::linf(3), sign_vectors(3));
    auto r32 = bnb_max_subfamily(c3, 2);
    CHECK(r32.indices.size() == 6);

    // With 2d members and m > k + 1 the family is the signed basis.
    for (const auto* r : {&r22, &r32}) {
        const auto& cand = (r == &r22) ? c2 : c3;
        for (int i : r->indices) {
            int nonzero = 0;
            for (const auto& x : cand[static_cast<std::size_t>(i)]) {
                nonzero += (x != 0);
            }
            CHECK(nonzero == 1);
        }
    }

    VectorFamily<Q> triple(NormSpace::linf(2), {{1, 0}, {1, 0}, {1, 0}});
    CHECK(bnb_max_subfamily(triple, 2).indices.size() == 1);
}

TEST_CASE("balanced k-collapsing families are (m-k)-collapsing")
{
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<Vec<Q>> vs;
        Vec<Q> sum(3, Q(0));
        for (int i = 0; i < 6; ++i) {
            vs.push_back(random_vec(rng, 3));
            sum = add(sum, vs.back());
        }
        vs.push_back(scaled(sum, Q(-1)));
        for (int k = 2; k <= 5; ++k) {
            VectorFamily<Q> raw(NormSpace::lp(3, 1.0), vs);
            auto r = check_k_collapsing(raw, k);
            if (r.margin == 0) {
                continue;
            }
            VectorFamily<Q> f(NormSpace::lp(3, 1.0), [&] {
                std::vector<Vec<Q>> s;
                for (const auto& v : vs) {
                    s.push_back(scaled(v, Q(1 / r.margin)));
                }
                return s;
            }());
            REQUIRE(check_k_collapsing(f, k).holds);
            REQUIRE(check_strong_balancing(f).holds);
            CHECK(check_k_collapsing(f, 7 - k).holds);
        }
    }
}

TEST_CASE("Euclidean families respect the subset-sum bound")
{
    std::mt19937_64 rng(31);
    std::normal_distribution<double> gauss;
    for (int trial = 0; trial < 200; ++trial) {
        const int k = 2 + trial % 3;
        const int m = k + 1 + trial % 4;
        std::vector<Vec<double>> vs;
        for (int i = 0; i < m; ++i) {
            Vec<double> v{gauss(rng), gauss(rng), gauss(rng)};
            double n = std::sqrt(dot(v, v));
            vs.push_back(scaled(v, 1.0 / n));
        }
        VectorFamily<double> f(NormSpace::lp(3, 2.0), vs);
        double lambda = check_k_collapsing(f, k).margin;
        double l2 = lambda * lambda;
        if (l2 < k) {
            CHECK(m <= (k * k - l2) / (k - l2) + 1e-9);
        }
    }
}
