#include "kcollapse/graphtools.hpp"

#include <algorithm>
#include <deque>
#include <functional>

#include "kcollapse/errors.hpp"

namespace kcollapse {

void SimpleGraph::add_edge(std::size_t u, std::size_t v)
{
    if (u == v) {
        throw UsageError("loops are not allowed");
    }
    if (u >= size() || v >= size()) {
        throw UsageError("edge endpoint out of range");
    }
    auto insert = [](std::vector<std::size_t>& list, std::size_t x) {
        auto it = std::lower_bound(list.begin(), list.end(), x);
        if (it == list.end() || *it != x) {
            list.insert(it, x);
        }
    };
    insert(adj_[u], v);
    insert(adj_[v], u);
}

bool SimpleGraph::has_edge(std::size_t u, std::size_t v) const
{
    return std::binary_search(adj_[u].begin(), adj_[u].end(), v);
}

std::vector<std::pair<std::size_t, std::size_t>> SimpleGraph::edges() const
{
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t u = 0; u < size(); ++u) {
        for (auto v : adj_[u]) {
            if (u < v) {
                out.emplace_back(u, v);
            }
        }
    }
    return out;
}

template <Scalar T>
SimpleGraph proximity_graph(const VectorFamily<T>& family, const T& threshold)
{
    const auto& space = family.space();
    // Exact Euclidean norms may be irrational; compare squares instead.
    const bool squared = is_exact_v<T> && space.kind() == NormKind::Lp && space.p() == 2.0;
    SimpleGraph g(family.size());
    for (std::size_t i = 0; i < family.size(); ++i) {
        for (std::size_t j = i + 1; j < family.size(); ++j) {
            Vec<T> diff = subtract(family[i], family[j]);
            bool close = false;
            if (squared) {
                close = less(dot(diff, diff), threshold * threshold);
            } else {
                close = less(norm_eval(space, diff), threshold);
            }
            if (close) {
                g.add_edge(i, j);
            }
        }
    }
    return g;
}

std::size_t max_degree(const SimpleGraph& g)
{
    std::size_t best = 0;
    for (std::size_t v = 0; v < g.size(); ++v) {
        best = std::max(best, g.degree(v));
    }
    return best;
}

namespace {

constexpr std::uint64_t kSearchNodeLimit = 50'000'000;

class Balancer
{
public:
    Balancer(const std::vector<std::vector<std::size_t>>& adj, int k, std::size_t cap)
        : adj_(adj), k_(static_cast<std::size_t>(k)), cap_(cap), color_(adj.size(), -1), sizes_(k_, 0),
          count_(adj.size(), std::vector<std::size_t>(k_, 0))
    {
    }

    void assign(std::size_t v, int c)
    {
        color_[v] = c;
        ++sizes_[static_cast<std::size_t>(c)];
        for (auto u : adj_[v]) {
            ++count_[u][static_cast<std::size_t>(c)];
        }
    }

    void unassign(std::size_t v)
    {
        auto c = static_cast<std::size_t>(color_[v]);
        --sizes_[c];
        for (auto u : adj_[v]) {
            --count_[u][c];
        }
        color_[v] = -1;
    }

    void greedy(const std::vector<std::size_t>& order)
    {
        for (auto v : order) {
            int best = -1;
            for (std::size_t c = 0; c < k_; ++c) {
                if (count_[v][c] != 0) {
                    continue;
                }
                if (best < 0 || sizes_[c] < sizes_[static_cast<std::size_t>(best)]) {
                    best = static_cast<int>(c);
                }
            }
            if (best < 0) {
                throw InvariantError("no free colour class; degree bound violated");
            }
            assign(v, best);
        }
    }

    // One shift along a path of movable vertices from an over-full class to an
    // under-full one. Returns false when no such path exists.
    bool shift()
    {
        std::vector<int> parent(k_, -1);
        std::vector<std::size_t> mover(k_, 0);
        std::vector<bool> seen(k_, false);
        std::deque<std::size_t> queue;
        for (std::size_t c = 0; c < k_; ++c) {
            if (sizes_[c] > cap_) {
                seen[c] = true;
                queue.push_back(c);
            }
        }
        if (queue.empty()) {
            return false;
        }
        while (!queue.empty()) {
            std::size_t x = queue.front();
            queue.pop_front();
            for (std::size_t v = 0; v < color_.size(); ++v) {
                if (static_cast<std::size_t>(color_[v]) != x) {
                    continue;
                }
                for (std::size_t y = 0; y < k_; ++y) {
                    if (seen[y] || count_[v][y] != 0) {
                        continue;
                    }
                    seen[y] = true;
                    parent[y] = static_cast<int>(x);
                    mover[y] = v;
                    if (sizes_[y] < cap_) {
                        apply_path(y, parent, mover);
                        return true;
                    }
                    queue.push_back(y);
                }
            }
        }
        return false;
    }

    bool search(std::uint64_t& nodes)
    {
        // DSATUR-style exhaustive search with every class capped at cap_.
        std::size_t pick = color_.size();
        std::size_t best_sat = 0, best_deg = 0;
        for (std::size_t v = 0; v < color_.size(); ++v) {
            if (color_[v] >= 0) {
                continue;
            }
            std::size_t sat = 0;
            for (std::size_t c = 0; c < k_; ++c) {
                sat += count_[v][c] != 0;
            }
            if (pick == color_.size() || sat > best_sat || (sat == best_sat && adj_[v].size() > best_deg)) {
                pick = v;
                best_sat = sat;
                best_deg = adj_[v].size();
            }
        }
        if (pick == color_.size()) {
            return true;
        }
        if (++nodes > kSearchNodeLimit) {
            throw InvariantError("equitable colouring search exceeded its node limit");
        }
        bool tried_empty = false;
        for (std::size_t c = 0; c < k_; ++c) {
            if (count_[pick][c] != 0 || sizes_[c] >= cap_) {
                continue;
            }
            if (sizes_[c] == 0) {
                if (tried_empty) {
                    continue;
                }
                tried_empty = true;
            }
            assign(pick, static_cast<int>(c));
            if (search(nodes)) {
                return true;
            }
            unassign(pick);
        }
        return false;
    }

    void clear()
    {
        for (std::size_t v = 0; v < color_.size(); ++v) {
            if (color_[v] >= 0) {
                unassign(v);
            }
        }
    }

    const std::vector<int>& colors() const { return color_; }

private:
    void apply_path(std::size_t end, const std::vector<int>& parent, const std::vector<std::size_t>& mover)
    {
        // Collect (vertex, target) from the end so each target has only lost
        // vertices by the time the next mover arrives.
        std::vector<std::pair<std::size_t, std::size_t>> moves;
        for (std::size_t y = end; parent[y] >= 0; y = static_cast<std::size_t>(parent[y])) {
            moves.emplace_back(mover[y], y);
        }
        for (auto& [v, target] : moves) {
            unassign(v);
            assign(v, static_cast<int>(target));
        }
    }

    const std::vector<std::vector<std::size_t>>& adj_;
    std::size_t k_;
    std::size_t cap_;
    std::vector<int> color_;
    std::vector<std::size_t> sizes_;
    std::vector<std::vector<std::size_t>> count_;
};

} // namespace

EquitableColoring equitable_coloring(const SimpleGraph& g, int k)
{
    if (k < 1) {
        throw UsageError("need at least one colour");
    }
    const std::size_t delta = max_degree(g);
    if (static_cast<std::size_t>(k) <= delta) {
        throw PreconditionError("equitable colouring needs k > max degree (k=" + std::to_string(k) +
                                ", max degree=" + std::to_string(delta) + ")");
    }
    const std::size_t n = g.size();
    const std::size_t kk = static_cast<std::size_t>(k);
    const std::size_t cap = (n + kk - 1) / kk;
    const std::size_t pad = cap * kk - n;
    // A clique of padding vertices forces them into distinct classes, so
    // removing them afterwards keeps the sizes within one of each other.
    std::vector<std::vector<std::size_t>> adj(n + pad);
    for (std::size_t v = 0; v < n; ++v) {
        adj[v] = g.neighbors(v);
    }
    for (std::size_t a = n; a < n + pad; ++a) {
        for (std::size_t b = n; b < n + pad; ++b) {
            if (a != b) {
                adj[a].push_back(b);
            }
        }
    }
    std::vector<std::size_t> order;
    for (std::size_t v = n; v < n + pad; ++v) {
        order.push_back(v);
    }
    std::vector<std::size_t> rest(n);
    for (std::size_t v = 0; v < n; ++v) {
        rest[v] = v;
    }
    std::stable_sort(rest.begin(), rest.end(), [&](std::size_t a, std::size_t b) { return adj[a].size() > adj[b].size(); });
    order.insert(order.end(), rest.begin(), rest.end());

    EquitableColoring out;
    Balancer bal(adj, k, cap);
    bal.greedy(order);
    while (bal.shift()) {
        ++out.moves;
    }
    const auto& col = bal.colors();
    std::vector<std::size_t> sizes(kk, 0);
    for (int c : col) {
        ++sizes[static_cast<std::size_t>(c)];
    }
    if (std::any_of(sizes.begin(), sizes.end(), [&](std::size_t s) { return s != cap; })) {
        out.fallback_used = true;
        bal.clear();
        std::uint64_t nodes = 0;
        if (!bal.search(nodes)) {
            throw InvariantError("no equitable colouring found");
        }
    }
    out.color.assign(col.begin(), col.begin() + static_cast<long>(n));
    out.class_sizes.assign(kk, 0);
    for (int c : out.color) {
        ++out.class_sizes[static_cast<std::size_t>(c)];
    }
    if (!is_equitable_coloring(g, k, out)) {
        throw InvariantError("equitable colouring failed its own check");
    }
    return out;
}

bool is_equitable_coloring(const SimpleGraph& g, int k, const EquitableColoring& c)
{
    if (c.color.size() != g.size()) {
        return false;
    }
    std::vector<std::size_t> sizes(static_cast<std::size_t>(k), 0);
    for (int col : c.color) {
        if (col < 0 || col >= k) {
            return false;
        }
        ++sizes[static_cast<std::size_t>(col)];
    }
    for (auto [u, v] : g.edges()) {
        if (c.color[u] == c.color[v]) {
            return false;
        }
    }
    auto [lo, hi] = std::minmax_element(sizes.begin(), sizes.end());
    return *hi - *lo <= 1;
}

BmInequality bm_inequality(std::size_t m, int k, std::size_t d)
{
    if (k < 2) {
        throw UsageError("k must be at least 2");
    }
    BmInequality b;
    const auto kk = static_cast<unsigned long>(k);
    b.q = m / kk;
    b.r = m - kk * b.q;
    mpz_class hi, lo;
    mpz_ui_pow_ui(hi.get_mpz_t(), static_cast<unsigned long>(b.q + 1), static_cast<unsigned long>(b.r));
    mpz_ui_pow_ui(lo.get_mpz_t(), static_cast<unsigned long>(b.q), kk - static_cast<unsigned long>(b.r));
    b.lhs_power = hi * lo;
    mpz_class num, den;
    mpz_ui_pow_ui(num.get_mpz_t(), kk + 2, static_cast<unsigned long>(d) * kk);
    mpz_ui_pow_ui(den.get_mpz_t(), kk, static_cast<unsigned long>(d) * kk);
    b.rhs_power = mpq_class(num, den);
    b.rhs_power.canonicalize();
    b.holds = mpq_class(b.lhs_power) <= b.rhs_power;
    // m > k (1 + 2/k)^d  <=>  m k^{d-1} > (k+2)^d
    mpz_class a, c;
    mpz_ui_pow_ui(a.get_mpz_t(), kk, static_cast<unsigned long>(d) - 1);
    mpz_ui_pow_ui(c.get_mpz_t(), kk + 2, static_cast<unsigned long>(d));
    b.exceeds_simple_bound = mpz_class(static_cast<unsigned long>(m)) * a > c;
    return b;
}

template <Scalar T>
PipelineReport bm_pipeline_check(const VectorFamily<T>& family, int k)
{
    PipelineReport rep;
    const auto& space = family.space();
    if (k < 2 || static_cast<std::size_t>(k) > family.size()) {
        throw UsageError("need 2 <= k <= m");
    }
    rep.collapsing = check_k_collapsing(family, k).holds;
    const bool squared = is_exact_v<T> && space.kind() == NormKind::Lp && space.p() == 2.0;
    rep.norms_ok = true;
    for (const auto& x : family.vectors()) {
        T v = squared ? dot(x, x) : norm_eval(space, x);
        if (less(v, T(1))) {
            rep.norms_ok = false;
        }
    }
    auto g = proximity_graph(family, T(1));
    rep.max_degree = max_degree(g);
    rep.degree_ok = rep.max_degree + 2 <= static_cast<std::size_t>(k);
    if (!rep.collapsing) {
        rep.stage = "collapsing";
        rep.message = "family is not " + std::to_string(k) + "-collapsing";
        return rep;
    }
    if (!rep.norms_ok) {
        rep.stage = "norms";
        rep.message = "some vector has norm below 1";
        return rep;
    }
    if (!rep.degree_ok) {
        // Impossible for a collapsing family with norms >= 1.
        throw InvariantError("proximity graph has degree " + std::to_string(rep.max_degree) + " > k-2");
    }
    rep.coloring = equitable_coloring(g, k);
    rep.inequality = bm_inequality(family.size(), k, space.dim());
    if (!rep.inequality->holds) {
        throw InvariantError("volume inequality fails on a collapsing family");
    }
    rep.stage = "ok";
    return rep;
}

template SimpleGraph proximity_graph(const VectorFamily<Rational>&, const Rational&);
template SimpleGraph proximity_graph(const VectorFamily<double>&, const double&);
template PipelineReport bm_pipeline_check(const VectorFamily<Rational>&, int);
template PipelineReport bm_pipeline_check(const VectorFamily<double>&, int);

} // namespace kcollapse
