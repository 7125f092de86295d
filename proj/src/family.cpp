#include "kcollapse/family.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <thread>

#include "kcollapse/combinatorics.hpp"
#include "kcollapse/errors.hpp"
#include "kcollapse/lp.hpp"

namespace kcollapse {

template <Scalar T>
VectorFamily<T>::VectorFamily(NormSpace space, std::vector<Vec<T>> vectors)
    : space_(std::move(space)), vectors_(std::move(vectors))
{
    if (vectors_.empty()) {
        throw UsageError("a vector family needs at least one vector");
    }
    for (std::size_t i = 0; i < vectors_.size(); ++i) {
        if (vectors_[i].size() != space_.ambient()) {
            throw UsageError("vector " + std::to_string(i + 1) + " has length " + std::to_string(vectors_[i].size()) +
                             ", expected " + std::to_string(space_.ambient()));
        }
        if (!in_space(space_, vectors_[i])) {
            throw UsageError("vector " + std::to_string(i + 1) + " lies outside the space");
        }
    }
}

std::string condition_name(Condition c)
{
    switch (c) {
    case Condition::KCollapsing:
        return "k-collapsing";
    case Condition::FullCollapsing:
        return "full-collapsing";
    case Condition::StrongBalancing:
        return "strong-balancing";
    case Condition::WeakBalancing:
        return "weak-balancing";
    }
    return "unknown";
}

namespace {

// Evaluates subset sums through a monotone "key" of the norm: key <= 1 exactly
// when the norm is <= 1. Slab balls are handled through the images of the
// vectors under the slab functionals, so each sum is a plain max-abs.
template <Scalar T>
class SumEvaluator
{
public:
    enum class Mode { MaxAbs, SumAbs, SquaredL2, General };

    explicit SumEvaluator(const VectorFamily<T>& family) : space_(family.space())
    {
        const auto& s = family.space();
        switch (s.kind()) {
        case NormKind::Linf:
            mode_ = Mode::MaxAbs;
            items_ = family.vectors();
            break;
        case NormKind::L1Subspace:
            mode_ = Mode::SumAbs;
            items_ = family.vectors();
            break;
        case NormKind::Lp:
            items_ = family.vectors();
            if (s.p() == 1.0) {
                mode_ = Mode::SumAbs;
            } else if (s.p() == 2.0 && is_exact_v<T>) {
                mode_ = Mode::SquaredL2;
            } else {
                mode_ = Mode::General;
            }
            break;
        case NormKind::Slab: {
            mode_ = Mode::MaxAbs;
            const auto& rows = s.template slab_rows<T>();
            for (const auto& x : family.vectors()) {
                Vec<T> img(rows.size());
                for (std::size_t r = 0; r < rows.size(); ++r) {
                    img[r] = dot(rows[r], x);
                }
                items_.push_back(std::move(img));
            }
            break;
        }
        case NormKind::VPolytope:
            mode_ = Mode::General;
            items_ = family.vectors();
            break;
        }
    }

    const std::vector<Vec<T>>& items() const { return items_; }
    std::size_t width() const { return items_.front().size(); }
    bool squared() const { return mode_ == Mode::SquaredL2; }

    T key(const Vec<T>& s) const
    {
        switch (mode_) {
        case Mode::MaxAbs: {
            T m = T(0);
            for (const auto& v : s) {
                T a = abs_of(v);
                if (a > m) {
                    m = a;
                }
            }
            return m;
        }
        case Mode::SumAbs: {
            T t = T(0);
            for (const auto& v : s) {
                t += abs_of(v);
            }
            return t;
        }
        case Mode::SquaredL2:
            return dot(s, s);
        case Mode::General:
            return norm_eval(space_, s);
        }
        return T(0);
    }

private:
    const NormSpace& space_;
    Mode mode_ = Mode::General;
    std::vector<Vec<T>> items_;
};

template <Scalar T>
bool violates(const T& key)
{
    return less(T(1), key);
}

template <Scalar T>
struct RangeResult
{
    T max_key = T(0);
    std::optional<std::vector<int>> witness;
    std::uint64_t count = 0;
};

template <Scalar T>
void consider(RangeResult<T>& r, const T& key, const std::vector<int>& subset)
{
    ++r.count;
    if (key > r.max_key) {
        r.max_key = key;
    }
    if (violates(key) && (!r.witness || lex_less(subset, *r.witness))) {
        r.witness = subset;
    }
}

template <Scalar T>
Vec<T> sum_from_scratch(const SumEvaluator<T>& eval, const std::vector<int>& subset)
{
    Vec<T> s(eval.width(), T(0));
    for (int i : subset) {
        const auto& v = eval.items()[static_cast<std::size_t>(i)];
        for (std::size_t c = 0; c < s.size(); ++c) {
            s[c] += v[c];
        }
    }
    return s;
}

template <Scalar T>
RangeResult<T> scan_range(const SumEvaluator<T>& eval, int m, int k, std::uint64_t lo, std::uint64_t hi)
{
    RangeResult<T> result;
    Vec<T> sum;
    std::vector<int> prev;
    std::uint64_t since_resync = 0;
    revolving_door(m, k, lo, hi, [&](const std::vector<int>& subset) {
        if (prev.empty() || (!is_exact_v<T> && ++since_resync >= 4096)) {
            sum = sum_from_scratch(eval, subset);
            since_resync = 0;
        } else {
            // Exactly one index left and one entered.
            int out = -1;
            int in = -1;
            std::size_t a = 0;
            std::size_t b = 0;
            while (a < prev.size() || b < subset.size()) {
                if (b == subset.size() || (a < prev.size() && prev[a] < subset[b])) {
                    out = prev[a++];
                } else if (a == prev.size() || subset[b] < prev[a]) {
                    in = subset[b++];
                } else {
                    ++a;
                    ++b;
                }
            }
            const auto& vo = eval.items()[static_cast<std::size_t>(out)];
            const auto& vi = eval.items()[static_cast<std::size_t>(in)];
            for (std::size_t c = 0; c < sum.size(); ++c) {
                sum[c] += vi[c];
                sum[c] -= vo[c];
            }
        }
        prev = subset;
        consider(result, eval.key(sum), subset);
    });
    return result;
}

template <Scalar T>
RangeResult<T> scan_sampled(const SumEvaluator<T>& eval, int m, int k, std::uint64_t samples, std::uint64_t seed)
{
    RangeResult<T> result;
    std::mt19937_64 rng(seed);
    std::vector<int> subset;
    for (std::uint64_t s = 0; s < samples; ++s) {
        // Floyd's algorithm for a uniform k-subset.
        subset.clear();
        for (int j = m - k; j < m; ++j) {
            std::uniform_int_distribution<int> pick(0, j);
            int t = pick(rng);
            if (std::find(subset.begin(), subset.end(), t) == subset.end()) {
                subset.push_back(t);
            } else {
                subset.push_back(j);
            }
        }
        std::sort(subset.begin(), subset.end());
        consider(result, eval.key(sum_from_scratch(eval, subset)), subset);
    }
    return result;
}

template <Scalar T>
void finish_margin(ConditionReport<T>& report, const SumEvaluator<T>& eval, const T& max_key)
{
    if (!eval.squared()) {
        report.margin = max_key;
        return;
    }
    if constexpr (is_exact_v<T>) {
        try {
            report.margin = sqrt_exact(max_key);
        } catch (const InexactError&) {
            report.margin = max_key;
            report.margin_squared = true;
        }
    }
}

} // namespace

template <Scalar T>
ConditionReport<T> check_k_collapsing(const VectorFamily<T>& family, int k, const ScanOptions& options)
{
    const int m = static_cast<int>(family.size());
    if (k < 1 || k > m) {
        throw UsageError("k must satisfy 1 <= k <= m (k = " + std::to_string(k) + ", m = " + std::to_string(m) + ")");
    }
    SumEvaluator<T> eval(family);
    ConditionReport<T> report;
    report.condition = Condition::KCollapsing;
    report.k = k;
    const std::uint64_t total = binomial_sat(static_cast<std::uint64_t>(m), static_cast<std::uint64_t>(k));

    RangeResult<T> merged;
    if (options.budget && total > *options.budget) {
        if (!options.seed) {
            throw BudgetExceeded("C(" + std::to_string(m) + ", " + std::to_string(k) + ") = " + std::to_string(total) +
                                 " subsets exceeds the budget of " + std::to_string(*options.budget) +
                                 "; pass a seed to sample instead");
        }
        merged = scan_sampled(eval, m, k, *options.budget, *options.seed);
        report.sampled = true;
    } else {
        unsigned threads = std::max(1u, options.threads);
        if (total < 4096) {
            threads = 1;
        }
        if (threads == 1) {
            merged = scan_range(eval, m, k, 0, total);
        } else {
            std::vector<RangeResult<T>> parts(threads);
            std::vector<std::thread> pool;
            for (unsigned t = 0; t < threads; ++t) {
                std::uint64_t lo = total / threads * t;
                std::uint64_t hi = (t + 1 == threads) ? total : total / threads * (t + 1);
                pool.emplace_back([&, t, lo, hi] { parts[t] = scan_range(eval, m, k, lo, hi); });
            }
            for (auto& th : pool) {
                th.join();
            }
            for (auto& p : parts) {
                merged.count += p.count;
                if (p.max_key > merged.max_key) {
                    merged.max_key = p.max_key;
                }
                if (p.witness && (!merged.witness || lex_less(*p.witness, *merged.witness))) {
                    merged.witness = p.witness;
                }
            }
        }
    }
    report.subsets_checked = merged.count;
    report.holds = !merged.witness.has_value();
    report.witness = merged.witness;
    finish_margin(report, eval, merged.max_key);
    return report;
}

template <Scalar T>
ConditionReport<T> check_full_collapsing(const VectorFamily<T>& family)
{
    const int m = static_cast<int>(family.size());
    if (m > 24) {
        throw UsageError("full collapsing enumerates 2^m subsets; m = " + std::to_string(m) + " exceeds the limit of 24");
    }
    SumEvaluator<T> eval(family);
    RangeResult<T> result;
    Vec<T> sum(eval.width(), T(0));
    std::uint32_t mask = 0;
    const std::uint32_t total = (m == 0) ? 0u : (1u << m);
    std::vector<int> subset;
    for (std::uint32_t step = 1; step < total; ++step) {
        int bit = __builtin_ctz(step);
        const auto& v = eval.items()[static_cast<std::size_t>(bit)];
        mask ^= (1u << bit);
        bool added = (mask >> bit) & 1u;
        for (std::size_t c = 0; c < sum.size(); ++c) {
            if (added) {
                sum[c] += v[c];
            } else {
                sum[c] -= v[c];
            }
        }
        if constexpr (!is_exact_v<T>) {
            if ((step & 4095u) == 0) {
                subset.clear();
                for (int i = 0; i < m; ++i) {
                    if ((mask >> i) & 1u) {
                        subset.push_back(i);
                    }
                }
                sum = sum_from_scratch(eval, subset);
            }
        }
        T key = eval.key(sum);
        ++result.count;
        if (key > result.max_key) {
            result.max_key = key;
        }
        if (violates(key)) {
            subset.clear();
            for (int i = 0; i < m; ++i) {
                if ((mask >> i) & 1u) {
                    subset.push_back(i);
                }
            }
            if (!result.witness || lex_less(subset, *result.witness)) {
                result.witness = subset;
            }
        }
    }
    ConditionReport<T> report;
    report.condition = Condition::FullCollapsing;
    report.subsets_checked = result.count;
    report.holds = !result.witness.has_value();
    report.witness = result.witness;
    finish_margin(report, eval, result.max_key);
    return report;
}

template <Scalar T>
ConditionReport<T> check_strong_balancing(const VectorFamily<T>& family)
{
    Vec<T> sum(family.space().ambient(), T(0));
    for (const auto& v : family.vectors()) {
        sum = add(sum, v);
    }
    ConditionReport<T> report;
    report.condition = Condition::StrongBalancing;
    if constexpr (is_exact_v<T>) {
        report.holds = is_zero_vector(sum);
        if (family.space().kind() == NormKind::Lp && family.space().p() == 2.0) {
            T sq = dot(sum, sum);
            try {
                report.margin = sqrt_exact(sq);
            } catch (const InexactError&) {
                report.margin = sq;
                report.margin_squared = true;
            }
        } else {
            report.margin = norm_eval(family.space(), sum);
        }
    } else {
        report.margin = norm_eval(family.space(), sum);
        report.holds = report.margin <= kFloatTolerance;
    }
    return report;
}

template <Scalar T>
ConditionReport<T> check_weak_balancing(const VectorFamily<T>& family)
{
    const std::size_t m = family.size();
    const std::size_t n = family.space().ambient();
    std::vector<Vec<Rational>> pts;
    for (const auto& v : family.vectors()) {
        if constexpr (is_exact_v<T>) {
            pts.push_back(v);
        } else {
            Vec<Rational> q(v.size());
            for (std::size_t i = 0; i < v.size(); ++i) {
                q[i] = rationalize(v[i], 1e-12);
            }
            pts.push_back(std::move(q));
        }
    }
    // maximize t subject to sum l_i x_i = 0, sum l_i = 1, l_i >= t, l_i >= 0.
    LinearProgram<Rational> lp(m + 1);
    lp.objective[m] = 1;
    lp.free_var[m] = true;
    for (std::size_t c = 0; c < n; ++c) {
        Vec<Rational> row(m + 1, Rational(0));
        for (std::size_t i = 0; i < m; ++i) {
            row[i] = pts[i][c];
        }
        lp.add(std::move(row), Relation::Equal, 0);
    }
    Vec<Rational> ones(m + 1, Rational(1));
    ones[m] = 0;
    lp.add(ones, Relation::Equal, 1);
    for (std::size_t i = 0; i < m; ++i) {
        Vec<Rational> row(m + 1, Rational(0));
        row[i] = 1;
        row[m] = -1;
        lp.add(std::move(row), Relation::GreaterEq, 0);
    }
    auto res = solve_lp(lp);
    ConditionReport<T> report;
    report.condition = Condition::WeakBalancing;
    if (res.status == LpStatus::Optimal) {
        report.holds = sgn(res.value) > 0;
        if constexpr (is_exact_v<T>) {
            report.margin = res.value;
        } else {
            report.margin = res.value.get_d();
        }
    } else {
        report.holds = false;
        report.margin = T(0);
    }
    return report;
}

template <Scalar T>
bool scalars_k_collapsing(const Vec<T>& values, int k)
{
    if (k < 1) {
        throw UsageError("k must be positive");
    }
    if (static_cast<std::size_t>(k) > values.size()) {
        return true;
    }
    Vec<T> sorted(values);
    std::sort(sorted.begin(), sorted.end());
    T low = T(0);
    T high = T(0);
    for (int i = 0; i < k; ++i) {
        low += sorted[static_cast<std::size_t>(i)];
        high += sorted[sorted.size() - 1 - static_cast<std::size_t>(i)];
    }
    return leq(high, T(1)) && leq(T(-1), low);
}

template <Scalar T>
NormalisationResult normalisation_violations(const Vec<T>& values)
{
    NormalisationResult r;
    const int m = static_cast<int>(values.size());
    for (int i = 0; i < m; ++i) {
        T ai = abs_of(values[static_cast<std::size_t>(i)]);
        if (!leq(T(1), ai)) {
            continue;
        }
        T cap = T(2) - ai;
        for (int j = 0; j < m; ++j) {
            if (j != i && less(cap, abs_of(values[static_cast<std::size_t>(j)]))) {
                r.violations.emplace_back(i, j);
            }
        }
    }
    r.holds = r.violations.empty();
    return r;
}

template <Scalar T>
NormalisationResult normalisation_check(const Vec<T>& values, int k)
{
    const int m = static_cast<int>(values.size());
    if (k < 2 || k > m - 2) {
        throw PreconditionError("normalisation needs 2 <= k <= m - 2 (k = " + std::to_string(k) +
                                ", m = " + std::to_string(m) + ")");
    }
    if (!scalars_k_collapsing(values, k)) {
        throw PreconditionError("the scalar family is not k-collapsing");
    }
    return normalisation_violations(values);
}

template <Scalar T>
bool far_partner_check(const VectorFamily<T>& family, const std::vector<int>& subset)
{
    const auto& space = family.space();
    Vec<T> sum(space.ambient(), T(0));
    for (int i : subset) {
        if (i < 0 || static_cast<std::size_t>(i) >= family.size()) {
            throw UsageError("subset index out of range");
        }
        if (!leq(T(1), norm_eval(space, family[static_cast<std::size_t>(i)]))) {
            throw PreconditionError("vector " + std::to_string(i + 1) + " has norm below 1");
        }
        sum = add(sum, family[static_cast<std::size_t>(i)]);
    }
    if (!leq(norm_eval(space, sum), T(1))) {
        throw PreconditionError("the subset sum has norm above 1");
    }
    for (int i : subset) {
        bool found = false;
        for (int j : subset) {
            if (j == i) {
                continue;
            }
            T dist = norm_eval(space, subtract(family[static_cast<std::size_t>(i)], family[static_cast<std::size_t>(j)]));
            if (leq(T(1), dist)) {
                found = true;
                break;
            }
        }
        if (!found) {
            return false;
        }
    }
    return true;
}

template <Scalar T>
DiameterCentroid<T> diameter_centroid_check(const VectorFamily<T>& family)
{
    const auto& space = family.space();
    const std::size_t n = family.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (!leq(T(1), norm_eval(space, family[i]))) {
            throw PreconditionError("vector " + std::to_string(i + 1) + " has norm below 1");
        }
    }
    DiameterCentroid<T> r;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            T dist = norm_eval(space, subtract(family[i], family[j]));
            if (dist > r.diameter) {
                r.diameter = dist;
            }
        }
    }
    Vec<T> sum(space.ambient(), T(0));
    for (const auto& v : family.vectors()) {
        sum = add(sum, v);
    }
    r.centroid_norm = norm_eval(space, scaled(sum, T(T(1) / from_int<T>(static_cast<long>(n)))));
    const T d = from_int<T>(static_cast<long>(space.dim()));
    r.hypothesis_holds = less(r.diameter, T(T(1) + T(1) / d));
    r.conclusion_holds = less(T(T(1) / (d * d)), r.centroid_norm);
    return r;
}

namespace {

class SubfamilySearch
{
public:
    SubfamilySearch(const VectorFamily<Rational>& family, int k) : family_(family), k_(k)
    {
        const std::size_t n = family.size();
        order_.resize(n);
        std::iota(order_.begin(), order_.end(), 0);
        std::vector<Rational> norms(n);
        for (std::size_t i = 0; i < n; ++i) {
            norms[i] = norm_eval(family.space(), family[i]);
        }
        std::stable_sort(order_.begin(), order_.end(), [&](int a, int b) {
            const auto& na = norms[static_cast<std::size_t>(a)];
            const auto& nb = norms[static_cast<std::size_t>(b)];
            if (na != nb) {
                return na > nb;
            }
            return family[static_cast<std::size_t>(a)] < family[static_cast<std::size_t>(b)];
        });
    }

    SubfamilyResult run()
    {
        std::vector<int> chosen;
        std::vector<int> compatible;
        for (int c : order_) {
            if (can_add(chosen, c)) {
                compatible.push_back(c);
            }
        }
        dfs(chosen, compatible);
        SubfamilyResult r;
        r.indices = best_;
        std::sort(r.indices.begin(), r.indices.end());
        r.nodes = nodes_;
        return r;
    }

private:
    bool can_add(const std::vector<int>& chosen, int candidate) const
    {
        const int need = k_ - 1;
        if (static_cast<int>(chosen.size()) < need) {
            return true; // fewer than k members after adding: vacuous
        }
        const auto& space = family_.space();
        const auto& x = family_[static_cast<std::size_t>(candidate)];
        bool ok = true;
        if (need == 0) {
            return leq(norm_eval(space, x), Rational(1));
        }
        revolving_door(static_cast<int>(chosen.size()), need, [&](const std::vector<int>& sub) {
            if (!ok) {
                return;
            }
            Vec<Rational> s(x);
            for (int idx : sub) {
                s = add(s, family_[static_cast<std::size_t>(chosen[static_cast<std::size_t>(idx)])]);
            }
            if (!leq(norm_eval(space, s), Rational(1))) {
                ok = false;
            }
        });
        return ok;
    }

    void dfs(std::vector<int>& chosen, const std::vector<int>& compatible)
    {
        ++nodes_;
        if (chosen.size() > best_.size()) {
            best_ = chosen;
        }
        if (compatible.empty() || chosen.size() + compatible.size() <= best_.size()) {
            return;
        }
        const int c = compatible.front();
        // Include c.
        chosen.push_back(c);
        std::vector<int> next;
        for (std::size_t i = 1; i < compatible.size(); ++i) {
            if (can_add(chosen, compatible[i])) {
                next.push_back(compatible[i]);
            }
        }
        dfs(chosen, next);
        chosen.pop_back();
        // Exclude c.
        std::vector<int> rest(compatible.begin() + 1, compatible.end());
        dfs(chosen, rest);
    }

    const VectorFamily<Rational>& family_;
    int k_;
    std::vector<int> order_;
    std::vector<int> best_;
    std::uint64_t nodes_ = 0;
};

} // namespace

SubfamilyResult bnb_max_subfamily(const VectorFamily<Rational>& candidates, int k)
{
    if (k < 1) {
        throw UsageError("k must be positive");
    }
    SubfamilySearch search(candidates, k);
    return search.run();
}

#define KCOLLAPSE_INSTANTIATE(T)                                                                          \
    template class VectorFamily<T>;                                                                       \
    template ConditionReport<T> check_k_collapsing(const VectorFamily<T>&, int, const ScanOptions&);     \
    template ConditionReport<T> check_full_collapsing(const VectorFamily<T>&);                            \
    template ConditionReport<T> check_strong_balancing(const VectorFamily<T>&);                           \
    template ConditionReport<T> check_weak_balancing(const VectorFamily<T>&);                             \
    template bool scalars_k_collapsing(const Vec<T>&, int);                                               \
    template NormalisationResult normalisation_check(const Vec<T>&, int);                                 \
    template NormalisationResult normalisation_violations(const Vec<T>&);                                 \
    template bool far_partner_check(const VectorFamily<T>&, const std::vector<int>&);                    \
    template DiameterCentroid<T> diameter_centroid_check(const VectorFamily<T>&);

KCOLLAPSE_INSTANTIATE(Rational)
KCOLLAPSE_INSTANTIATE(double)

#undef KCOLLAPSE_INSTANTIATE

} // namespace kcollapse
