#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <type_traits>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace kcollapse {

/// C(n, k), saturating at UINT64_MAX instead of overflowing.
inline std::uint64_t binomial_sat(std::uint64_t n, std::uint64_t k)
{
    if (k > n) {
        return 0;
    }
    if (k > n - k) {
        k = n - k;
    }
    constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
    unsigned __int128 r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
        if (r > kMax) {
            return kMax;
        }
    }
    return static_cast<std::uint64_t>(r);
}

inline mpz_class binomial(unsigned long n, unsigned long k)
{
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

inline bool lex_less(const std::vector<int>& a, const std::vector<int>& b)
{
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

namespace detail {

template <class Visit>
class RevolvingDoor
{
public:
    RevolvingDoor(int t, Visit& visit) : visit_(visit)
    {
        chosen_.reserve(static_cast<std::size_t>(t));
        out_.resize(static_cast<std::size_t>(t));
    }

    // Emits the ranks [lo, hi) of L(n, t), or of its reverse.
    void run(int n, int t, std::uint64_t lo, std::uint64_t hi, bool reversed)
    {
        if (lo >= hi || t < 0 || t > n) {
            return;
        }
        if (t == 0 || t == n) {
            emit(t);
            return;
        }
        std::uint64_t first = reversed ? binomial_sat(n - 1, t - 1) : binomial_sat(n - 1, t);
        // L(n,t)   = L(n-1,t) ++ rev(L(n-1,t-1)) + {n-1}
        // rev(...) = L(n-1,t-1) + {n-1} ++ rev(L(n-1,t))
        auto left = [&](std::uint64_t a, std::uint64_t b) {
            if (!reversed) {
                run(n - 1, t, a, b, false);
            } else {
                chosen_.push_back(n - 1);
                run(n - 1, t - 1, a, b, false);
                chosen_.pop_back();
            }
        };
        auto right = [&](std::uint64_t a, std::uint64_t b) {
            if (!reversed) {
                chosen_.push_back(n - 1);
                run(n - 1, t - 1, a, b, true);
                chosen_.pop_back();
            } else {
                run(n - 1, t, a, b, true);
            }
        };
        if (lo < first) {
            left(lo, std::min(hi, first));
        }
        if (hi > first) {
            right(lo > first ? lo - first : 0, hi - first);
        }
    }

private:
    // Base case: the low block is {0, ..., low-1}; chosen_ holds the rest in descending order.
    void emit(int low)
    {
        std::size_t idx = 0;
        for (int i = 0; i < low; ++i) {
            out_[idx++] = i;
        }
        for (auto it = chosen_.rbegin(); it != chosen_.rend(); ++it) {
            out_[idx++] = *it;
        }
        visit_(static_cast<const std::vector<int>&>(out_));
    }

    Visit& visit_;
    std::vector<int> chosen_;
    std::vector<int> out_;
};

} // namespace detail

/// Visits the t-subsets of {0..n-1} with revolving-door ranks in [lo, hi).
/// Consecutive subsets differ by exactly one element swapped in and one out.
/// The callback receives the subset as a sorted index vector.
template <class Visit>
void revolving_door(int n, int t, std::uint64_t lo, std::uint64_t hi, Visit&& visit)
{
    detail::RevolvingDoor<std::remove_reference_t<Visit>> gen(t, visit);
    gen.run(n, t, lo, hi, false);
}

template <class Visit>
void revolving_door(int n, int t, Visit&& visit)
{
    revolving_door(n, t, 0, binomial_sat(n, t), std::forward<Visit>(visit));
}

} // namespace kcollapse
