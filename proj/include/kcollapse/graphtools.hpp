#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "kcollapse/family.hpp"

namespace kcollapse {

class SimpleGraph
{
public:
    explicit SimpleGraph(std::size_t n = 0) : adj_(n) {}

    std::size_t size() const { return adj_.size(); }
    /// Ignores duplicates; loops are rejected.
    void add_edge(std::size_t u, std::size_t v);
    bool has_edge(std::size_t u, std::size_t v) const;
    const std::vector<std::size_t>& neighbors(std::size_t v) const { return adj_[v]; }
    std::size_t degree(std::size_t v) const { return adj_[v].size(); }
    std::vector<std::pair<std::size_t, std::size_t>> edges() const;

private:
    std::vector<std::vector<std::size_t>> adj_; // sorted
};

/// Joins i and j when ||x_i - x_j|| < threshold.
template <Scalar T>
SimpleGraph proximity_graph(const VectorFamily<T>& family, const T& threshold);

std::size_t max_degree(const SimpleGraph& g);

struct EquitableColoring
{
    std::vector<int> color;              // vertex -> 0..k-1
    std::vector<std::size_t> class_sizes;
    std::size_t moves = 0;               // path shifts performed while balancing
    bool fallback_used = false;          // exhaustive search was needed
};

/// Proper k-colouring with class sizes differing by at most one. Requires k > max degree.
EquitableColoring equitable_coloring(const SimpleGraph& g, int k);

/// Independent check: proper and equitable.
bool is_equitable_coloring(const SimpleGraph& g, int k, const EquitableColoring& c);

struct BmInequality
{
    std::size_t q = 0;       // floor(m/k)
    std::size_t r = 0;       // m - kq
    mpz_class lhs_power;     // (q+1)^r q^(k-r)
    mpq_class rhs_power;     // ((k+2)/k)^(dk)
    bool holds = false;      // lhs_power <= rhs_power, i.e. the k-th root inequality
    bool exceeds_simple_bound = false; // m > k (1 + 2/k)^d
};

/// The volume inequality for an equitable partition of m points into k classes in dimension d.
BmInequality bm_inequality(std::size_t m, int k, std::size_t d);

struct PipelineReport
{
    std::string stage;       // "ok" or the first failing stage
    bool collapsing = false;
    bool norms_ok = false;
    std::size_t max_degree = 0;
    bool degree_ok = false;
    std::optional<EquitableColoring> coloring;
    std::optional<BmInequality> inequality;
    std::string message;
};

/// Runs the colouring argument on a family: collapsing and norm checks, the
/// proximity graph's degree bound, an equitable colouring, then the inequality.
template <Scalar T>
PipelineReport bm_pipeline_check(const VectorFamily<T>& family, int k);

} // namespace kcollapse
