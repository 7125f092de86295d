#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "kcollapse/family.hpp"

namespace kcollapse {

/// Nearly orthogonal Euclidean unit vectors u_i.
///
/// Exact sets store integer-valued `vectors` with u_i = sqrt(scale_sq) * vectors[i],
/// so every Gram entry is the rational scale_sq * <v_i, v_j>. Float sets store
/// `float_vectors` directly and leave `vectors` empty.
struct AlmostOrthogonalSet
{
    std::size_t dim = 0;        // coordinates per vector
    std::size_t span_dim = 0;   // dimension of the subspace they live in (0 if not computed)
    std::vector<Vec<Rational>> vectors;
    Rational scale_sq = 1;
    std::vector<Vec<double>> float_vectors;
    Rational gram_lo = 0;       // all off-diagonal Gram entries lie in [gram_lo, gram_hi]
    Rational gram_hi = 0;
    Rational bound = 0;         // max(|gram_lo|, |gram_hi|)
    bool strict = false;        // off-diagonal entries strictly inside (-bound, bound)

    bool exact() const { return !vectors.empty(); }
    std::size_t size() const { return exact() ? vectors.size() : float_vectors.size(); }
    /// Exact Gram entry (exact sets only).
    Rational gram(std::size_t i, std::size_t j) const;
};

/// +-e_1, ..., +-e_d in l_inf^d.
VectorFamily<Rational> linf_cross(std::size_t d);

/// Every nonzero vector of {-1, 0, 1}^d in l_inf^d, in lexicographic order.
VectorFamily<Rational> linf_sign_vectors(std::size_t d);

/// The space whose unit ball is conv{sum_{i in I} eps_i e_i : |I| <= k}.
NormSpace pk_polytope_norm(std::size_t d, std::size_t k);

struct LiftedFamily
{
    VectorFamily<Rational> family;
    std::vector<Vec<Rational>> functionals; // y_1..y_m in the same coordinates
};

/// x_i = u_i + e, y_i = (1 + 1/(2k)) u_i - e/(2k), with the space being the slab
/// ball of the y_i (plus caps when they do not span). Requires every
/// |<u_i, u_j>| <= 1/(2k+1). Float sets are rationalized first.
LiftedFamily lift_almost_orthogonal(const AlmostOrthogonalSet& set, int k);

inline constexpr std::uint64_t kDefaultMaxTrials = 100000;

/// Seeded rejection-greedy: keep a random unit direction if all |Gram| < delta.
/// Stops after max_trials consecutive rejections or once max_vectors are kept.
AlmostOrthogonalSet greedy_unit_vectors(std::size_t d, double delta, std::uint64_t seed,
                                        std::uint64_t max_trials = kDefaultMaxTrials,
                                        std::optional<std::size_t> max_vectors = std::nullopt);

/// The q^{s+1} graphs of polynomials of degree <= s over GF(q), as q x q
/// matrices (row i has q-1 at column p(i) and -1 elsewhere), flattened row-major.
AlmostOrthogonalSet polynomial_vectors(unsigned q, unsigned s);

/// d unit vectors in a subspace of l_1^{d+1} with diameter 1 + 1/d - eps and
/// centroid norm 1/d^2 + (1 - 1/d) eps, for 0 < eps <= 1/d.
VectorFamily<Rational> fixture_X(std::size_t d, const Rational& eps);

/// d+1 unit vectors in the sum-zero subspace of l_1^{d+1}, pairwise at distance 1 + 1/d.
VectorFamily<Rational> fixture_Y(std::size_t d);

/// An (m-1)-collapsing tuple with two entries above 1.
Vec<Rational> counterexample_tuple(int m);

} // namespace kcollapse
