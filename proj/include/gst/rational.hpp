#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace gst {

using Rational = mpq_class;
using Integer = mpz_class;

struct InputError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Binomial coefficient C(m, k); zero outside 0 <= k <= m.
inline Integer binom(long m, long k) {
    if (k < 0 || k > m || m < 0) return Integer(0);
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(m), static_cast<unsigned long>(k));
    return r;
}

/// 2^e as an exact integer.
inline Integer pow2(unsigned long e) {
    Integer r;
    mpz_ui_pow_ui(r.get_mpz_t(), 2, e);
    return r;
}

/// num/den in canonical form (two-argument mpq construction does not reduce).
inline Rational ratio(const Integer& num, const Integer& den) {
    Rational r{num, den};
    r.canonicalize();
    return r;
}
inline Rational ratio(long num, long den) { return ratio(Integer(num), Integer(den)); }

inline Rational rat_pow(const Rational& x, unsigned long e) {
    Rational r;
    mpz_pow_ui(r.get_num_mpz_t(), x.get_num().get_mpz_t(), e);
    mpz_pow_ui(r.get_den_mpz_t(), x.get_den().get_mpz_t(), e);
    return r;  // num/den coprime implies powers coprime, already canonical
}

/// Exact rational 1 / 2^e.
inline Rational dyadic(long num, unsigned long log2_den) {
    Rational r(Integer(num), pow2(log2_den));
    r.canonicalize();
    return r;
}

inline int sign_of(const Rational& x) { return sgn(x); }

inline double to_double(const Rational& x) { return x.get_d(); }

/// Parses "num/den", plain integers, and finite decimals ("0.25" -> 1/4).
/// Decimals are read exactly; there is no rounding step.
Rational parse_rational(const std::string& s);

/// "num/den", or just "num" when the denominator is 1.
std::string format_rational(const Rational& x);

/// The unique smallest-denominator rational in the closed interval [lo, hi].
/// Stern-Brocot descent; used to recover exact roots from bisection brackets.
Rational simplest_in_interval(const Rational& lo, const Rational& hi);

/// Exact square root test: returns r with r^2 == x when x is a perfect
/// square of a rational, otherwise nullopt.
std::optional<Rational> exact_sqrt(const Rational& x);

}  // namespace gst
