#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace fdb {

/// Exact rational number. GMP keeps the value in lowest terms with a
/// positive denominator after every arithmetic operation.
using Rational = mpq_class;

inline Rational make_rational(std::int64_t num, std::int64_t den = 1)
{
    if (den == 0) {
        throw std::domain_error("rational with zero denominator");
    }
    Rational r(mpz_class(static_cast<long>(num)), mpz_class(static_cast<long>(den)));
    r.canonicalize();
    return r;
}

inline Rational inverse(const Rational& r)
{
    if (r == 0) {
        throw std::domain_error("inverse of zero");
    }
    return Rational(1) / r;
}

/// Serialises as "p/q" with q >= 1 always printed, e.g. "1/1", "0/1", "-3/4".
inline std::string to_string(const Rational& r)
{
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

/// Accepts "p/q" or a bare integer "p".
inline Rational parse_rational(std::string_view text)
{
    const auto slash = text.find('/');
    const std::string num(text.substr(0, slash));
    const std::string den = slash == std::string_view::npos ? "1" : std::string(text.substr(slash + 1));
    mpz_class n;
    mpz_class d;
    if (num.empty() || den.empty() || n.set_str(num, 10) != 0 || d.set_str(den, 10) != 0) {
        throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
    }
    if (d == 0) {
        throw std::domain_error("rational with zero denominator");
    }
    Rational r(n, d);
    r.canonicalize();
    return r;
}

inline Rational factorial(unsigned n)
{
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return Rational(f);
}

inline Rational binomial(unsigned n, unsigned k)
{
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), n, k);
    return Rational(b);
}

} // namespace fdb
