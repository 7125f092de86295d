#pragma once

#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "kcollapse/scalar.hpp"

namespace kcollapse {

enum class BoundKind { Upper, Lower, Exact };
// C: largest k-collapsing family over all d-dimensional spaces.
// CB: the same with strong balancing. Space: a bound for one given space.
enum class Quantity { C, CB, Both, Space };

std::string bound_kind_name(BoundKind k);
std::string quantity_name(Quantity q);

struct BoundResult
{
    std::string name;
    BoundKind kind = BoundKind::Upper;
    Quantity quantity = Quantity::C;
    bool applicable = false;
    std::optional<double> raw;          // real-valued formula value
    std::optional<mpz_class> value;     // integer consequence for a cardinality
    bool asymptotic_only = false;
    bool needs_large_d = false;         // only valid for sufficiently large d
    std::string note;
};

struct GammaValue
{
    int k = 0;
    double gamma = 0;
    double lo = 0; // e / k^2
    double hi = 0; // e / (k^2 - e)
};

/// Unique positive root of (1+x)^{1/x} (1 + 1/x) = k^2.
GammaValue gamma_k(int k);

BoundResult ub_balanced(int k, int d);
BoundResult ub_rankthm1(int k, int d);
BoundResult ub_rankthm2(int k, int d);
BoundResult ub_newthm(int k, int d);
BoundResult ub_bmthm(int k, int d);
/// Bound for a space at Banach-Mazur distance D from Euclidean space, given D^2.
BoundResult ub_bmdistance(int k, const Rational& dist_sq);
/// Euclidean subset-sum bound with parameter lambda, given lambda^2.
BoundResult ub_eucl(int k, const Rational& lambda_sq);
BoundResult ub_hadamard(int k, int d, int p);
/// Best of ub_hadamard over p = 1..10.
BoundResult ub_hadamard_sweep(int k, int d);
double binom_stirling_upper(int n, int k);

BoundResult lb_trivial(int k, int d);
BoundResult lb_greedy(int k, int d);
BoundResult lb_polynomial(int k, int d);
std::vector<BoundResult> ub_asymptotic(int k, int d);

/// Every result for (k, d), in a fixed order.
std::vector<BoundResult> all_bounds(int k, int d);

struct BestBounds
{
    mpz_class best_lower;
    mpz_class best_upper;
    std::optional<mpz_class> exact;
    std::string lower_source;
    std::string upper_source;
    std::optional<BoundResult> greedy; // reported, never aggregated
};

/// Aggregate for the quantity C. Throws InvariantError if lower > upper.
BestBounds best_bounds(int k, int d);

struct Table1Row
{
    int k = 0;
    double gamma = 0;
    std::string gamma_text;   // nearest, 7 decimals
    std::string rank_base;    // k^{2 gamma_k}, rounded up to 3 decimals
    std::string bm_base;      // 1 + 2/k, rounded up to 3 decimals
    std::string greedy_base;  // 1 + 1/(2(2k+1)^2), rounded down to 4 decimals
};

std::vector<Table1Row> table1(int kmin = 2, int kmax = 9);

} // namespace kcollapse
