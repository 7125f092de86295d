#include "kcollapse/scalar.hpp"

#include <cctype>

#include "kcollapse/errors.hpp"

namespace kcollapse {

Rational sqrt_exact(const Rational& x)
{
    if (sgn(x) < 0) {
        throw InexactError("square root of a negative rational");
    }
    mpz_class num = x.get_num();
    mpz_class den = x.get_den();
    if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t())) {
        throw InexactError("square root of " + format_rational(x) + " is irrational");
    }
    mpz_class rn;
    mpz_class rd;
    mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
    Rational r(rn, rd);
    r.canonicalize();
    return r;
}

Rational rationalize(double x, double tol)
{
    if (!std::isfinite(x)) {
        throw UsageError("cannot rationalize a non-finite value");
    }
    // Convergents h/k of the continued fraction of x.
    mpz_class h_prev = 1, h = static_cast<long>(std::floor(x));
    mpz_class k_prev = 0, k = 1;
    double frac = x - std::floor(x);
    for (int iter = 0; iter < 64; ++iter) {
        Rational current(h, k);
        current.canonicalize();
        if (std::fabs(current.get_d() - x) <= tol || frac == 0.0) {
            return current;
        }
        double inv = 1.0 / frac;
        long a = static_cast<long>(std::floor(inv));
        frac = inv - static_cast<double>(a);
        mpz_class h_next = a * h + h_prev;
        mpz_class k_next = a * k + k_prev;
        h_prev = h;
        k_prev = k;
        h = h_next;
        k = k_next;
    }
    Rational r(x);
    return r;
}

Rational parse_rational(const std::string& text)
{
    std::string s;
    for (char c : text) {
        if (!std::isspace(static_cast<unsigned char>(c))) {
            s.push_back(c);
        }
    }
    if (s.empty()) {
        throw UsageError("empty rational literal");
    }
    auto valid_int = [](const std::string& t) {
        std::size_t i = (t.size() > 0 && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
        if (i == t.size()) {
            return false;
        }
        for (; i < t.size(); ++i) {
            if (!std::isdigit(static_cast<unsigned char>(t[i]))) {
                return false;
            }
        }
        return true;
    };
    auto strip_plus = [](std::string t) {
        if (!t.empty() && t[0] == '+') {
            t.erase(0, 1);
        }
        return t;
    };
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        std::string a = s.substr(0, slash);
        std::string b = s.substr(slash + 1);
        if (!valid_int(a) || !valid_int(b)) {
            throw UsageError("malformed rational literal: " + text);
        }
        mpz_class num(strip_plus(a));
        mpz_class den(strip_plus(b));
        if (den == 0) {
            throw UsageError("zero denominator in rational literal: " + text);
        }
        Rational r(num, den);
        r.canonicalize();
        return r;
    }
    auto dot_pos = s.find('.');
    if (dot_pos != std::string::npos) {
        std::string whole = s.substr(0, dot_pos);
        std::string frac = s.substr(dot_pos + 1);
        bool negative = !whole.empty() && whole[0] == '-';
        if (whole == "-" || whole == "+" || whole.empty()) {
            whole += "0";
        }
        if (!valid_int(whole) || (!frac.empty() && !valid_int(frac)) || (!frac.empty() && (frac[0] == '-' || frac[0] == '+'))) {
            throw UsageError("malformed decimal literal: " + text);
        }
        mpz_class scale = 1;
        for (std::size_t i = 0; i < frac.size(); ++i) {
            scale *= 10;
        }
        mpz_class w(strip_plus(whole));
        mpz_class f = frac.empty() ? mpz_class(0) : mpz_class(frac);
        mpz_class num = abs(w) * scale + f;
        if (negative) {
            num = -num;
        }
        Rational r(num, scale);
        r.canonicalize();
        return r;
    }
    if (!valid_int(s)) {
        throw UsageError("malformed rational literal: " + text);
    }
    return Rational(mpz_class(strip_plus(s)));
}

std::string format_rational(const Rational& value)
{
    Rational x(value);
    x.canonicalize();
    if (x.get_den() == 1) {
        return x.get_num().get_str();
    }
    return x.get_num().get_str() + "/" + x.get_den().get_str();
}

} // namespace kcollapse
