#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kcollapse/scalar.hpp"

namespace kcollapse {

enum class Exactness { Exact, UpperBoundOnly };

std::string exactness_name(Exactness e);

// Maximum of sum alpha_i^{2p} over alpha_1..alpha_{m-1} with alpha_m = 1 and
// the tuple k-collapsing (optionally also summing to zero).
struct OptResult
{
    Rational value;
    std::optional<std::vector<Rational>> vertex; // sorted descending
    Exactness exactness = Exactness::Exact;
    bool unique = false;              // only one ordered maximiser (oracle and balanced case)
    std::optional<Rational> t0;       // real relaxation point when the value is only a bound
};

OptResult max_sq_balanced(int m, int k);

/// Closed form. p = 1 accepts 2 <= k <= m-2 and is an upper bound only when
/// 3k >= 2m; p >= 2 needs 2 <= k <= min(m-2, (m+1)/2).
OptResult max_pow_general(int m, int k, int p);

inline constexpr int kOracleMaxM = 16;

/// Exact enumeration of the vertices of the ordered constraint simplex.
OptResult vertex_oracle(int m, int k, int p, bool balanced);

/// Sum of alpha_i^{2p}.
Rational power_sum(const std::vector<Rational>& alpha, int p);

} // namespace kcollapse
