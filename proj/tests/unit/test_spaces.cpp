#include "doctest.h"

#include <random>

#include "kcollapse/errors.hpp"
#include "kcollapse/spaces.hpp"

using namespace kcollapse;

namespace {

using Q = Rational;

Vec<Q> random_rational_vector(std::mt19937_64& rng, std::size_t n, int span = 7)
{
    std::uniform_int_distribution<int> num(-span, span);
    std::uniform_int_distribution<int> den(1, 5);
    Vec<Q> v(n);
    for (auto& x : v) {
        x = Q(num(rng), den(rng));
        x.canonicalize();
    }
    return v;
}

// Every space kind we can evaluate exactly.
std::vector<NormSpace> exact_spaces()
{
    std::vector<NormSpace> out;
    out.push_back(NormSpace::lp(3, 1.0));
    out.push_back(NormSpace::linf(3));
    out.push_back(NormSpace::slab({{1, 0, 0}, {0, 1, 0}, {1, 1, 1}, {Q(1, 2), -1, 2}}));
    out.push_back(NormSpace::slab({{1, 1, 0}, {1, -1, 0}}, {SlabCap{{0, 0, 1}, Q(3)}}));
    out.push_back(NormSpace::vpolytope({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 0}, {1, -1, 1}}));
    return out;
}

} // namespace

TEST_CASE("norm examples")
{
    CHECK(norm_eval(NormSpace::linf(2), Vec<Q>{1, -1}) == 1);
    CHECK(norm_eval(NormSpace::lp(2, 2.0), Vec<Q>{3, 4}) == 5);
    CHECK(norm_eval(NormSpace::lp(2, 2.0), Vec<double>{3, 4}) == doctest::Approx(5.0));
    CHECK(norm_eval(NormSpace::lp(2, 3.0), Vec<double>{1, 1}) == doctest::Approx(std::cbrt(2.0)));

    auto slab = NormSpace::slab({{1, 0}, {0, 1}});
    Vec<Q> x{Q(1, 2), -2};
    CHECK(norm_eval(slab, x) == 2);
    // Oracle: x/t is on the boundary exactly when t is the gauge.
    Q t = norm_eval(slab, x);
    Vec<Q> boundary = scaled(x, Q(1 / t));
    CHECK(abs_of(boundary[1]) == 1);
    CHECK(abs_of(boundary[0]) <= 1);
}

TEST_CASE("dual unit vector examples")
{
    auto l2 = NormSpace::lp(2, 2.0);
    CHECK(dual_unit_vector(l2, Vec<Q>{3, 4}) == Vec<Q>{Q(3, 5), Q(4, 5)});
    CHECK(dual_unit_vector(NormSpace::lp(2, 1.0), Vec<Q>{1, -2}) == Vec<Q>{1, -1});
    CHECK(dual_unit_vector(NormSpace::linf(2), Vec<Q>{2, 2}) == Vec<Q>{1, 0});
    CHECK(dual_unit_vector(NormSpace::linf(3), Vec<Q>{0, -3, 3}) == Vec<Q>{0, -1, 0});
    CHECK_THROWS_AS(dual_unit_vector(l2, Vec<Q>{0, 0}), UsageError);
}

TEST_CASE("dual norm examples")
{
    CHECK(dual_norm_eval(NormSpace::lp(2, 1.0), Vec<Q>{1, -1}) == 1);
    CHECK(dual_norm_eval(NormSpace::lp(2, 2.0), Vec<Q>{3, 4}) == 5);
    auto slab = NormSpace::slab({{1, 0}, {0, 1}});
    CHECK(dual_norm_eval(slab, Vec<Q>{2, 3}) == 5);
    // Oracle: the unit ball is the square, so the supremum is attained at a corner.
    Q best = 0;
    for (int a : {-1, 1}) {
        for (int b : {-1, 1}) {
            best = std::max(best, Q(2 * a + 3 * b));
        }
    }
    CHECK(best == 5);
    CHECK(dual_norm_eval(NormSpace::lp(2, 3.0), Vec<double>{1, 1}) == doctest::Approx(std::pow(2.0, 2.0 / 3.0)));
}

TEST_CASE("construction errors")
{
    CHECK_THROWS_AS(NormSpace::slab({{1, 0}, {2, 0}}), UsageError);
    CHECK_THROWS_AS(NormSpace::l1_subspace(3, {{1, 0, 0}, {2, 0, 0}}), UsageError);
    CHECK_THROWS_AS(NormSpace::lp(2, 0.5), UsageError);
    CHECK_THROWS_AS(norm_eval(NormSpace::linf(2), Vec<Q>{1, 2, 3}), UsageError);
    CHECK_THROWS_AS(norm_eval(NormSpace::lp(2, 2.0), Vec<Q>{1, 1}), InexactError);
}

TEST_CASE("l1 subspace norms and membership")
{
    auto sub = NormSpace::l1_subspace(3, {{1, -1, 0}, {0, 0, 1}});
    CHECK(sub.dim() == 2);
    CHECK(norm_eval(sub, Vec<Q>{Q(1, 2), Q(-1, 2), 2}) == Q(3));
    CHECK_THROWS_AS(norm_eval(sub, Vec<Q>{1, 0, 0}), UsageError);
    CHECK(in_space(sub, Vec<double>{0.5, -0.5, 1.0}));
    CHECK_FALSE(in_space(sub, Vec<double>{0.5, -0.4, 1.0}));
    // The functional (1, 0, 0) restricted to the subspace has norm 1/2:
    // on {(a, -a, b)} it reads a, and |a| <= (2|a| + |b|)/2.
    CHECK(dual_norm_eval(sub, Vec<Q>{1, 0, 0}) == Q(1, 2));
}

TEST_CASE("duality identities hold exactly on random vectors")
{
    std::mt19937_64 rng(2024);
    for (const auto& space : exact_spaces()) {
        for (int trial = 0; trial < 40; ++trial) {
            auto x = random_rational_vector(rng, space.ambient());
            if (is_zero_vector(x)) {
                continue;
            }
            auto f = dual_unit_vector(space, x);
            CAPTURE(space.describe());
            CHECK(dot(f, x) == norm_eval(space, x));
            CHECK(dual_norm_eval(space, f) == 1);

            auto y = random_rational_vector(rng, space.ambient());
            auto g = random_rational_vector(rng, space.ambient());
            CHECK(abs_of(dot(g, y)) <= dual_norm_eval(space, g) * norm_eval(space, y));
            CHECK(norm_eval(space, add(x, y)) <= norm_eval(space, x) + norm_eval(space, y));
            Q t(-5, 3);
            CHECK(norm_eval(space, scaled(x, t)) == abs_of(t) * norm_eval(space, x));
        }
    }
}

TEST_CASE("duality identities in the l1 subspace")
{
    std::mt19937_64 rng(7);
    auto sub = NormSpace::l1_subspace(4, {{1, 0, 0, -1}, {0, 1, 0, -1}, {0, 0, 1, 2}});
    for (int trial = 0; trial < 40; ++trial) {
        auto c = random_rational_vector(rng, 3);
        Vec<Q> x(4, Q(0));
        for (std::size_t i = 0; i < 3; ++i) {
            x = add(x, scaled(sub.basis()[i], c[i]));
        }
        if (is_zero_vector(x)) {
            continue;
        }
        auto f = dual_unit_vector(sub, x);
        CHECK(dot(f, x) == norm_eval(sub, x));
        CHECK(dual_norm_eval(sub, f) == 1);
    }
}

TEST_CASE("float backend agrees with the tolerance contract")
{
    std::mt19937_64 rng(99);
    std::normal_distribution<double> gauss;
    for (double p : {1.0, 1.5, 2.0, 3.0, 7.0}) {
        auto space = NormSpace::lp(4, p);
        for (int trial = 0; trial < 50; ++trial) {
            Vec<double> x(4);
            for (auto& v : x) {
                v = gauss(rng);
            }
            auto f = dual_unit_vector(space, x);
            double n = norm_eval(space, x);
            CHECK(std::fabs(dot(f, x) - n) <= 1e-9 * n);
            CHECK(dual_norm_eval(space, f) == doctest::Approx(1.0).epsilon(1e-9));
        }
    }
}
