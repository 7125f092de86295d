#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kcollapse/scalar.hpp"
#include "kcollapse/spaces.hpp"

namespace kcollapse {

/// m vectors (repetitions allowed) in a normed space, all in one arithmetic backend.
template <Scalar T>
class VectorFamily
{
public:
    VectorFamily(NormSpace space, std::vector<Vec<T>> vectors);

    const NormSpace& space() const { return space_; }
    const std::vector<Vec<T>>& vectors() const { return vectors_; }
    const Vec<T>& operator[](std::size_t i) const { return vectors_[i]; }
    std::size_t size() const { return vectors_.size(); }

private:
    NormSpace space_;
    std::vector<Vec<T>> vectors_;
};

enum class Condition { KCollapsing, FullCollapsing, StrongBalancing, WeakBalancing };

std::string condition_name(Condition c);

template <Scalar T>
struct ConditionReport
{
    Condition condition = Condition::KCollapsing;
    int k = 0;
    bool holds = true;
    /// Lexicographically smallest violating subset, 0-based and sorted.
    std::optional<std::vector<int>> witness;
    /// Collapsing: largest subset-sum norm seen. Strong balancing: norm of the
    /// full sum. Weak balancing: the largest achievable minimum barycentric weight.
    T margin = T(0);
    /// Set for exact Euclidean families whose largest norm is irrational; margin
    /// then holds the squared norm.
    bool margin_squared = false;
    bool sampled = false;
    std::uint64_t subsets_checked = 0;
};

struct ScanOptions
{
    /// Maximum number of subsets to enumerate. When the count exceeds it, a
    /// seed switches to random sampling of `budget` subsets; without a seed the
    /// check throws BudgetExceeded.
    std::optional<std::uint64_t> budget;
    std::optional<std::uint64_t> seed;
    unsigned threads = 1;
};

template <Scalar T>
ConditionReport<T> check_k_collapsing(const VectorFamily<T>& family, int k, const ScanOptions& options = {});

/// All nonempty subsets (m <= 24).
template <Scalar T>
ConditionReport<T> check_full_collapsing(const VectorFamily<T>& family);

template <Scalar T>
ConditionReport<T> check_strong_balancing(const VectorFamily<T>& family);

/// Exact LP; float coordinates are snapped to rationals first.
template <Scalar T>
ConditionReport<T> check_weak_balancing(const VectorFamily<T>& family);

/// One-dimensional k-collapsing test: the k largest values sum to at most 1
/// and the k smallest to at least -1. Families shorter than k hold vacuously.
template <Scalar T>
bool scalars_k_collapsing(const Vec<T>& values, int k);

struct NormalisationResult
{
    bool holds = true;
    /// Pairs (i, j), 0-based, with |a_i| >= 1 and |a_j| > 2 - |a_i|.
    std::vector<std::pair<int, int>> violations;
};

/// Checks |a_j| <= 2 - |a_i| for every i with |a_i| >= 1, requiring
/// 2 <= k <= m - 2 and a k-collapsing input.
template <Scalar T>
NormalisationResult normalisation_check(const Vec<T>& values, int k);

/// The same conclusion without the preconditions (used on counterexamples).
template <Scalar T>
NormalisationResult normalisation_violations(const Vec<T>& values);

/// Every member of `subset` has a partner in it at distance >= 1. Requires
/// all norms >= 1 and a subset sum of norm <= 1.
template <Scalar T>
bool far_partner_check(const VectorFamily<T>& family, const std::vector<int>& subset);

template <Scalar T>
struct DiameterCentroid
{
    T diameter = T(0);
    T centroid_norm = T(0);
    bool hypothesis_holds = false; // diameter < 1 + 1/d
    bool conclusion_holds = false; // centroid norm > 1/d^2
};

template <Scalar T>
DiameterCentroid<T> diameter_centroid_check(const VectorFamily<T>& family);

struct SubfamilyResult
{
    std::vector<int> indices; // 0-based positions in the candidate list
    std::uint64_t nodes = 0;
};

/// Largest k-collapsing sub-multiset of the candidates, by exact branch and bound.
SubfamilyResult bnb_max_subfamily(const VectorFamily<Rational>& candidates, int k);

} // namespace kcollapse
