#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "kcollapse/scalar.hpp"

namespace kcollapse {

enum class NormKind { Lp, Linf, Slab, L1Subspace, VPolytope };

/// Extra slab |<direction, x>| <= bound added to a slab ball.
struct SlabCap
{
    Vec<Rational> direction;
    Rational bound;
};

/// A finite-dimensional normed space. Immutable after construction.
///
/// Vectors and functionals are always written in ambient coordinates and
/// paired by the ordinary dot product. For every kind except L1Subspace the
/// ambient dimension equals the dimension of the space.
class NormSpace
{
public:
    /// l_p^d for 1 <= p < infinity; pass p = infinity for l_infinity.
    static NormSpace lp(std::size_t d, double p);
    static NormSpace linf(std::size_t d);
    /// Ball {x : |<y_i, x>| <= 1 for all i, |<e'_j, x>| <= lambda_j for all caps}.
    static NormSpace slab(std::vector<Vec<Rational>> functionals, std::vector<SlabCap> caps = {});
    /// The subspace of l_1^ambient spanned by `basis`.
    static NormSpace l1_subspace(std::size_t ambient, std::vector<Vec<Rational>> basis);
    /// Ball conv(±v_i) given by its vertices (the symmetric closure is implied).
    static NormSpace vpolytope(std::vector<Vec<Rational>> vertices);

    NormKind kind() const { return kind_; }
    std::size_t dim() const { return dim_; }
    std::size_t ambient() const { return ambient_; }
    double p() const { return p_; }
    const std::vector<Vec<Rational>>& functionals() const { return functionals_; }
    const std::vector<SlabCap>& caps() const { return caps_; }
    const std::vector<Vec<Rational>>& basis() const { return basis_; }
    const std::vector<Vec<Rational>>& vertices() const { return vertices_; }

    std::string describe() const;

    /// Slab functionals followed by the caps rescaled to y = e'/lambda.
    template <Scalar T>
    const std::vector<Vec<T>>& slab_rows() const;

    /// Rows N with N x = 0 exactly on an l1 subspace (empty for other kinds).
    template <Scalar T>
    const std::vector<Vec<T>>& complement_rows() const;

private:
    NormKind kind_ = NormKind::Lp;
    std::size_t dim_ = 0;
    std::size_t ambient_ = 0;
    double p_ = 2.0;
    std::vector<Vec<Rational>> functionals_;
    std::vector<SlabCap> caps_;
    std::vector<Vec<Rational>> basis_;
    std::vector<Vec<Rational>> vertices_;
    // Cached evaluation data.
    std::vector<Vec<Rational>> rows_q_;
    std::vector<Vec<double>> rows_d_;
    std::vector<Vec<Rational>> complement_q_;
    std::vector<Vec<double>> complement_d_;
};

template <>
const std::vector<Vec<Rational>>& NormSpace::slab_rows<Rational>() const;
template <>
const std::vector<Vec<double>>& NormSpace::slab_rows<double>() const;
template <>
const std::vector<Vec<Rational>>& NormSpace::complement_rows<Rational>() const;
template <>
const std::vector<Vec<double>>& NormSpace::complement_rows<double>() const;

template <Scalar T>
T norm_eval(const NormSpace& space, const Vec<T>& x);

template <Scalar T>
Vec<T> dual_unit_vector(const NormSpace& space, const Vec<T>& x);

template <Scalar T>
T dual_norm_eval(const NormSpace& space, const Vec<T>& f);

/// Whether x lies in the space (always true except for L1Subspace).
template <Scalar T>
bool in_space(const NormSpace& space, const Vec<T>& x);

/// min sum |c_i| subject to sum c_i g_i = x; this is the gauge of conv(±g_i).
template <Scalar T>
T l1_decomposition_norm(const std::vector<Vec<T>>& generators, const Vec<T>& x);

template <Scalar T>
Vec<T> to_backend(const Vec<Rational>& v);

} // namespace kcollapse
