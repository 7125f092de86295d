#include "kcollapse/spaces.hpp"

#include <limits>
#include <sstream>

#include "kcollapse/errors.hpp"
#include "kcollapse/lp.hpp"
#include "kcollapse/matrix.hpp"

namespace kcollapse {

namespace {

void check_lengths(const std::vector<Vec<Rational>>& rows, std::size_t n, const char* what)
{
    for (const auto& r : rows) {
        if (r.size() != n) {
            throw UsageError(std::string(what) + ": vectors must all have length " + std::to_string(n));
        }
    }
}

std::size_t rank_of_rows(const std::vector<Vec<Rational>>& rows)
{
    if (rows.empty()) {
        return 0;
    }
    return rank_of(Matrix<Rational>::from_rows(rows));
}

template <Scalar T>
void check_dimension(const NormSpace& space, const Vec<T>& x)
{
    if (x.size() != space.ambient()) {
        throw UsageError("dimension mismatch: expected a vector of length " + std::to_string(space.ambient()) +
                         ", got " + std::to_string(x.size()));
    }
}

template <Scalar T>
T max_abs(const Vec<T>& x)
{
    T m = T(0);
    for (const auto& v : x) {
        T a = abs_of(v);
        if (a > m) {
            m = a;
        }
    }
    return m;
}

template <Scalar T>
T sum_abs(const Vec<T>& x)
{
    T s = T(0);
    for (const auto& v : x) {
        s += abs_of(v);
    }
    return s;
}

template <Scalar T>
T signum(const T& v)
{
    return T(sign_of(v));
}

bool is_two(double p) { return p == 2.0; }

} // namespace

template <Scalar T>
Vec<T> to_backend(const Vec<Rational>& v)
{
    if constexpr (is_exact_v<T>) {
        return v;
    } else {
        Vec<double> out(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) {
            out[i] = v[i].get_d();
        }
        return out;
    }
}

NormSpace NormSpace::lp(std::size_t d, double p)
{
    if (d == 0) {
        throw UsageError("space dimension must be positive");
    }
    if (std::isinf(p) && p > 0) {
        return linf(d);
    }
    if (!(p >= 1.0)) {
        throw UsageError("l_p needs p >= 1");
    }
    NormSpace s;
    s.kind_ = NormKind::Lp;
    s.dim_ = d;
    s.ambient_ = d;
    s.p_ = p;
    return s;
}

NormSpace NormSpace::linf(std::size_t d)
{
    if (d == 0) {
        throw UsageError("space dimension must be positive");
    }
    NormSpace s;
    s.kind_ = NormKind::Linf;
    s.dim_ = d;
    s.ambient_ = d;
    s.p_ = std::numeric_limits<double>::infinity();
    return s;
}

NormSpace NormSpace::slab(std::vector<Vec<Rational>> functionals, std::vector<SlabCap> caps)
{
    if (functionals.empty()) {
        throw UsageError("slab ball needs at least one functional");
    }
    const std::size_t d = functionals.front().size();
    if (d == 0) {
        throw UsageError("space dimension must be positive");
    }
    check_lengths(functionals, d, "slab functionals");
    NormSpace s;
    s.kind_ = NormKind::Slab;
    s.dim_ = d;
    s.ambient_ = d;
    s.rows_q_ = functionals;
    for (const auto& cap : caps) {
        if (cap.direction.size() != d) {
            throw UsageError("slab cap direction has the wrong length");
        }
        if (sgn(cap.bound) <= 0) {
            throw UsageError("slab cap bound must be positive");
        }
        s.rows_q_.push_back(scaled(cap.direction, Rational(1 / cap.bound)));
    }
    if (rank_of_rows(s.rows_q_) != d) {
        throw UsageError("slab ball is unbounded: functionals and caps do not span the space");
    }
    for (const auto& r : s.rows_q_) {
        s.rows_d_.push_back(to_backend<double>(r));
    }
    s.functionals_ = std::move(functionals);
    s.caps_ = std::move(caps);
    return s;
}

NormSpace NormSpace::l1_subspace(std::size_t ambient, std::vector<Vec<Rational>> basis)
{
    if (ambient == 0 || basis.empty()) {
        throw UsageError("l1 subspace needs a positive ambient dimension and a nonempty basis");
    }
    check_lengths(basis, ambient, "l1 subspace basis");
    if (rank_of_rows(basis) != basis.size()) {
        throw UsageError("l1 subspace basis vectors are linearly dependent");
    }
    NormSpace s;
    s.kind_ = NormKind::L1Subspace;
    s.dim_ = basis.size();
    s.ambient_ = ambient;
    s.p_ = 1.0;
    s.complement_q_ = null_space(Matrix<Rational>::from_rows(basis));
    for (const auto& r : s.complement_q_) {
        s.complement_d_.push_back(to_backend<double>(r));
    }
    s.basis_ = std::move(basis);
    return s;
}

NormSpace NormSpace::vpolytope(std::vector<Vec<Rational>> vertices)
{
    if (vertices.empty()) {
        throw UsageError("polytope needs at least one vertex");
    }
    const std::size_t d = vertices.front().size();
    if (d == 0) {
        throw UsageError("space dimension must be positive");
    }
    check_lengths(vertices, d, "polytope vertices");
    if (rank_of_rows(vertices) != d) {
        throw UsageError("polytope vertices do not span the space; the gauge would not be a norm");
    }
    NormSpace s;
    s.kind_ = NormKind::VPolytope;
    s.dim_ = d;
    s.ambient_ = d;
    s.rows_q_ = vertices;
    for (const auto& r : s.rows_q_) {
        s.rows_d_.push_back(to_backend<double>(r));
    }
    s.vertices_ = std::move(vertices);
    return s;
}

template <>
const std::vector<Vec<Rational>>& NormSpace::slab_rows<Rational>() const
{
    return rows_q_;
}

template <>
const std::vector<Vec<double>>& NormSpace::slab_rows<double>() const
{
    return rows_d_;
}

template <>
const std::vector<Vec<Rational>>& NormSpace::complement_rows<Rational>() const
{
    return complement_q_;
}

template <>
const std::vector<Vec<double>>& NormSpace::complement_rows<double>() const
{
    return complement_d_;
}

std::string NormSpace::describe() const
{
    std::ostringstream os;
    switch (kind_) {
    case NormKind::Lp:
        os << "l_" << p_ << "^" << dim_;
        break;
    case NormKind::Linf:
        os << "l_inf^" << dim_;
        break;
    case NormKind::Slab:
        os << "slab ball in R^" << dim_ << " (" << functionals_.size() << " functionals, " << caps_.size()
           << " caps)";
        break;
    case NormKind::L1Subspace:
        os << dim_ << "-dimensional subspace of l_1^" << ambient_;
        break;
    case NormKind::VPolytope:
        os << "polytope ball in R^" << dim_ << " (" << vertices_.size() << " vertices)";
        break;
    }
    return os.str();
}

template <Scalar T>
bool in_space(const NormSpace& space, const Vec<T>& x)
{
    check_dimension(space, x);
    if (space.kind() != NormKind::L1Subspace) {
        return true;
    }
    const auto& complement = space.complement_rows<T>();
    if constexpr (is_exact_v<T>) {
        for (const auto& z : complement) {
            if (!is_zero(dot(z, x))) {
                return false;
            }
        }
        return true;
    } else {
        const double scale = std::max(1.0, max_abs(x));
        for (const auto& z : complement) {
            if (std::fabs(dot(z, x)) > kFloatTolerance * scale * std::max(1.0, sum_abs(z))) {
                return false;
            }
        }
        return true;
    }
}

template <Scalar T>
T l1_decomposition_norm(const std::vector<Vec<T>>& generators, const Vec<T>& x)
{
    const std::size_t n = generators.size();
    const std::size_t d = x.size();
    LinearProgram<T> lp(2 * n);
    for (std::size_t i = 0; i < 2 * n; ++i) {
        lp.objective[i] = T(-1);
    }
    for (std::size_t r = 0; r < d; ++r) {
        Vec<T> row(2 * n, T(0));
        for (std::size_t i = 0; i < n; ++i) {
            row[i] = generators[i][r];
            row[n + i] = -generators[i][r];
        }
        lp.add(std::move(row), Relation::Equal, x[r]);
    }
    auto res = solve_lp(lp);
    if (res.status != LpStatus::Optimal) {
        throw PreconditionError("vector is not in the span of the generators");
    }
    T value = -res.value;
    if constexpr (!is_exact_v<T>) {
        if (value < 0) {
            value = 0;
        }
    }
    return value;
}

template <Scalar T>
T norm_eval(const NormSpace& space, const Vec<T>& x)
{
    check_dimension(space, x);
    switch (space.kind()) {
    case NormKind::Linf:
        return max_abs(x);
    case NormKind::Lp: {
        const double p = space.p();
        if (p == 1.0) {
            return sum_abs(x);
        }
        if (is_two(p)) {
            return sqrt_of(dot(x, x));
        }
        if constexpr (is_exact_v<T>) {
            throw InexactError("l_p norms with p not in {1, 2, inf} need the float backend");
        } else {
            double s = 0.0;
            for (double v : x) {
                s += std::pow(std::fabs(v), p);
            }
            return std::pow(s, 1.0 / p);
        }
    }
    case NormKind::Slab: {
        T m = T(0);
        for (const auto& y : space.slab_rows<T>()) {
            T v = abs_of(dot(y, x));
            if (v > m) {
                m = v;
            }
        }
        return m;
    }
    case NormKind::L1Subspace:
        if (!in_space(space, x)) {
            throw UsageError("vector lies outside the l1 subspace");
        }
        return sum_abs(x);
    case NormKind::VPolytope:
        return l1_decomposition_norm(space.slab_rows<T>(), x);
    }
    throw InvariantError("unknown norm kind");
}

template <Scalar T>
Vec<T> dual_unit_vector(const NormSpace& space, const Vec<T>& x)
{
    check_dimension(space, x);
    if (is_zero_vector(x)) {
        throw UsageError("dual unit vector of the zero vector is undefined");
    }
    const std::size_t n = x.size();
    switch (space.kind()) {
    case NormKind::Linf: {
        T m = max_abs(x);
        for (std::size_t i = 0; i < n; ++i) {
            if (approx_equal(abs_of(x[i]), m)) {
                Vec<T> f(n, T(0));
                f[i] = signum(x[i]);
                return f;
            }
        }
        break;
    }
    case NormKind::Lp: {
        const double p = space.p();
        if (p == 1.0) {
            Vec<T> f(n, T(0));
            for (std::size_t i = 0; i < n; ++i) {
                f[i] = signum(x[i]);
            }
            return f;
        }
        if (is_two(p)) {
            T norm = sqrt_of(dot(x, x));
            return scaled(x, T(T(1) / norm));
        }
        if constexpr (is_exact_v<T>) {
            throw InexactError("l_p dual unit vectors with p not in {1, 2, inf} need the float backend");
        } else {
            double norm = norm_eval(space, x);
            Vec<double> f(n);
            for (std::size_t i = 0; i < n; ++i) {
                f[i] = (x[i] < 0 ? -1.0 : 1.0) * std::pow(std::fabs(x[i]) / norm, p - 1.0);
            }
            return f;
        }
    }
    case NormKind::Slab: {
        T norm = norm_eval(space, x);
        for (const auto& y : space.slab_rows<T>()) {
            T v = dot(y, x);
            if (approx_equal(abs_of(v), norm)) {
                return sign_of(v) < 0 ? scaled(y, T(-1)) : y;
            }
        }
        break;
    }
    case NormKind::L1Subspace: {
        if (!in_space(space, x)) {
            throw UsageError("vector lies outside the l1 subspace");
        }
        Vec<T> f(n, T(0));
        for (std::size_t i = 0; i < n; ++i) {
            f[i] = signum(x[i]);
        }
        return f;
    }
    case NormKind::VPolytope: {
        // maximize <f, x> subject to |<f, v>| <= 1 for every vertex v.
        LinearProgram<T> lp(n);
        lp.objective = x;
        for (std::size_t j = 0; j < n; ++j) {
            lp.free_var[j] = true;
        }
        for (const auto& v : space.slab_rows<T>()) {
            lp.add(v, Relation::LessEq, T(1));
            lp.add(v, Relation::GreaterEq, T(-1));
        }
        auto res = solve_lp(lp);
        if (res.status != LpStatus::Optimal) {
            throw InvariantError("dual unit vector program for a bounded polytope did not solve");
        }
        return res.x;
    }
    }
    throw InvariantError("no active functional found for a nonzero vector");
}

template <Scalar T>
T dual_norm_eval(const NormSpace& space, const Vec<T>& f)
{
    check_dimension(space, f);
    switch (space.kind()) {
    case NormKind::Linf:
        return sum_abs(f);
    case NormKind::Lp: {
        const double p = space.p();
        if (p == 1.0) {
            return max_abs(f);
        }
        if (is_two(p)) {
            return sqrt_of(dot(f, f));
        }
        if constexpr (is_exact_v<T>) {
            throw InexactError("l_p dual norms with p not in {1, 2, inf} need the float backend");
        } else {
            const double q = p / (p - 1.0);
            double s = 0.0;
            for (double v : f) {
                s += std::pow(std::fabs(v), q);
            }
            return std::pow(s, 1.0 / q);
        }
    }
    case NormKind::Slab:
        return l1_decomposition_norm(space.slab_rows<T>(), f);
    case NormKind::L1Subspace: {
        // maximize <f, u - w> subject to sum(u + w) <= 1, N(u - w) = 0, u, w >= 0.
        const std::size_t n = f.size();
        LinearProgram<T> lp(2 * n);
        for (std::size_t i = 0; i < n; ++i) {
            lp.objective[i] = f[i];
            lp.objective[n + i] = -f[i];
        }
        lp.add(Vec<T>(2 * n, T(1)), Relation::LessEq, T(1));
        for (const auto& z : space.complement_rows<T>()) {
            Vec<T> row(2 * n, T(0));
            for (std::size_t i = 0; i < n; ++i) {
                row[i] = z[i];
                row[n + i] = -z[i];
            }
            lp.add(std::move(row), Relation::Equal, T(0));
        }
        auto res = solve_lp(lp);
        if (res.status != LpStatus::Optimal) {
            throw InvariantError("l1 subspace dual norm program did not solve");
        }
        return res.value;
    }
    case NormKind::VPolytope: {
        T m = T(0);
        for (const auto& v : space.slab_rows<T>()) {
            T a = abs_of(dot(v, f));
            if (a > m) {
                m = a;
            }
        }
        return m;
    }
    }
    throw InvariantError("unknown norm kind");
}

template Vec<Rational> to_backend<Rational>(const Vec<Rational>&);
template Vec<double> to_backend<double>(const Vec<Rational>&);
template bool in_space(const NormSpace&, const Vec<Rational>&);
template bool in_space(const NormSpace&, const Vec<double>&);
template Rational l1_decomposition_norm(const std::vector<Vec<Rational>>&, const Vec<Rational>&);
template double l1_decomposition_norm(const std::vector<Vec<double>>&, const Vec<double>&);
template Rational norm_eval(const NormSpace&, const Vec<Rational>&);
template double norm_eval(const NormSpace&, const Vec<double>&);
template Vec<Rational> dual_unit_vector(const NormSpace&, const Vec<Rational>&);
template Vec<double> dual_unit_vector(const NormSpace&, const Vec<double>&);
template Rational dual_norm_eval(const NormSpace&, const Vec<Rational>&);
template double dual_norm_eval(const NormSpace&, const Vec<double>&);

} // namespace kcollapse
