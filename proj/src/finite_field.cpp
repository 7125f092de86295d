#include "kcollapse/finite_field.hpp"

#include <string>

#include "kcollapse/errors.hpp"

namespace kcollapse {

namespace {

using Poly = std::vector<unsigned>; // lowest degree first, over Z/p

void trim(Poly& a)
{
    while (!a.empty() && a.back() == 0) {
        a.pop_back();
    }
}

// Remainder of a modulo monic b.
Poly poly_mod(Poly a, const Poly& b, unsigned p)
{
    trim(a);
    const std::size_t db = b.size() - 1;
    while (a.size() > db) {
        unsigned lead = a.back();
        std::size_t shift = a.size() - 1 - db;
        for (std::size_t i = 0; i <= db; ++i) {
            a[shift + i] = (a[shift + i] + (p - lead) * b[i]) % p;
        }
        trim(a);
    }
    return a;
}

Poly monic_from_index(unsigned index, unsigned degree, unsigned p)
{
    Poly f(degree + 1, 0);
    for (unsigned i = 0; i < degree; ++i) {
        f[i] = index % p;
        index /= p;
    }
    f[degree] = 1;
    return f;
}

unsigned ipow(unsigned b, unsigned e)
{
    unsigned r = 1;
    for (unsigned i = 0; i < e; ++i) {
        r *= b;
    }
    return r;
}

bool irreducible(const Poly& f, unsigned p)
{
    const unsigned deg = static_cast<unsigned>(f.size() - 1);
    for (unsigned d = 1; 2 * d <= deg; ++d) {
        const unsigned count = ipow(p, d);
        for (unsigned idx = 0; idx < count; ++idx) {
            if (poly_mod(f, monic_from_index(idx, d, p), p).empty()) {
                return false;
            }
        }
    }
    return true;
}

} // namespace

std::optional<PrimePower> prime_power(std::uint64_t q)
{
    if (q < 2) {
        return std::nullopt;
    }
    std::uint64_t p = 0;
    for (std::uint64_t f = 2; f * f <= q; ++f) {
        if (q % f == 0) {
            p = f;
            break;
        }
    }
    if (p == 0) {
        return PrimePower{q, 1};
    }
    unsigned e = 0;
    while (q % p == 0) {
        q /= p;
        ++e;
    }
    if (q != 1) {
        return std::nullopt;
    }
    return PrimePower{p, e};
}

std::uint64_t largest_plane_order(std::uint64_t d)
{
    std::uint64_t best = 0;
    for (std::uint64_t q = 2; q * q - q + 1 <= d; ++q) {
        if (prime_power(q)) {
            best = q;
        }
    }
    return best;
}

FiniteField::FiniteField(unsigned q) : q_(q)
{
    auto pp = prime_power(q);
    if (!pp) {
        throw UsageError(std::to_string(q) + " is not a prime power");
    }
    if (q > kMaxOrder) {
        throw UsageError("field order " + std::to_string(q) + " exceeds " + std::to_string(kMaxOrder));
    }
    p_ = static_cast<unsigned>(pp->p);
    e_ = pp->e;

    // Smallest monic irreducible polynomial of degree e in base-p index order.
    const unsigned candidates = ipow(p_, e_);
    for (unsigned idx = 0; idx < candidates; ++idx) {
        Poly f = monic_from_index(idx, e_, p_);
        if (e_ == 1 || (f[0] != 0 && irreducible(f, p_))) {
            modulus_ = f;
            break;
        }
    }
    if (modulus_.empty()) {
        throw InvariantError("no irreducible polynomial found");
    }

    auto digits = [&](unsigned a) {
        Poly d(e_, 0);
        for (unsigned i = 0; i < e_; ++i) {
            d[i] = a % p_;
            a /= p_;
        }
        return d;
    };
    auto encode = [&](const Poly& d) {
        unsigned a = 0;
        for (std::size_t i = d.size(); i-- > 0;) {
            a = a * p_ + d[i];
        }
        return a;
    };

    add_.assign(static_cast<std::size_t>(q_) * q_, 0);
    mul_.assign(static_cast<std::size_t>(q_) * q_, 0);
    neg_.assign(q_, 0);
    for (unsigned a = 0; a < q_; ++a) {
        Poly da = digits(a);
        Poly na(e_);
        for (unsigned i = 0; i < e_; ++i) {
            na[i] = (p_ - da[i]) % p_;
        }
        neg_[a] = encode(na);
        for (unsigned b = 0; b < q_; ++b) {
            Poly db = digits(b);
            Poly s(e_);
            for (unsigned i = 0; i < e_; ++i) {
                s[i] = (da[i] + db[i]) % p_;
            }
            add_[a * q_ + b] = encode(s);
            Poly prod(2 * e_, 0);
            for (unsigned i = 0; i < e_; ++i) {
                for (unsigned j = 0; j < e_; ++j) {
                    prod[i + j] = (prod[i + j] + da[i] * db[j]) % p_;
                }
            }
            Poly r = poly_mod(prod, modulus_, p_);
            r.resize(e_, 0);
            mul_[a * q_ + b] = encode(r);
        }
    }
}

unsigned FiniteField::eval(const std::vector<unsigned>& coeffs, unsigned x) const
{
    unsigned acc = 0;
    for (std::size_t i = coeffs.size(); i-- > 0;) {
        acc = add(mul(acc, x), coeffs[i]);
    }
    return acc;
}

} // namespace kcollapse
