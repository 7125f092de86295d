#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace kcollapse {

struct PrimePower
{
    std::uint64_t p = 0;
    unsigned e = 0;
};

/// q = p^e with p prime, or nothing.
std::optional<PrimePower> prime_power(std::uint64_t q);

/// Largest prime power q with q^2 - q + 1 <= d, or 0 if there is none.
std::uint64_t largest_plane_order(std::uint64_t d);

/// GF(q) in a polynomial basis. Element a encodes sum_i digit_i(a) x^i with
/// base-p digits; 0 and 1 are the field's zero and one.
class FiniteField
{
public:
    static constexpr unsigned kMaxOrder = 1024;

    explicit FiniteField(unsigned q);

    unsigned order() const { return q_; }
    unsigned characteristic() const { return p_; }
    unsigned degree() const { return e_; }
    /// Coefficients of the monic modulus, lowest degree first.
    const std::vector<unsigned>& modulus() const { return modulus_; }

    unsigned add(unsigned a, unsigned b) const { return add_[a * q_ + b]; }
    unsigned mul(unsigned a, unsigned b) const { return mul_[a * q_ + b]; }
    unsigned neg(unsigned a) const { return neg_[a]; }
    unsigned sub(unsigned a, unsigned b) const { return add(a, neg(b)); }

    /// Horner evaluation; coeffs lowest degree first.
    unsigned eval(const std::vector<unsigned>& coeffs, unsigned x) const;

private:
    unsigned q_, p_, e_;
    std::vector<unsigned> modulus_;
    std::vector<unsigned> add_, mul_, neg_;
};

} // namespace kcollapse
