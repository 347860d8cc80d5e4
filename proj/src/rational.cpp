#include "gst/rational.hpp"

#include <cctype>

namespace gst {

namespace {

Integer int10(const std::string& s) {
    Integer z;
    if (mpz_set_str(z.get_mpz_t(), s.c_str(), 10) != 0)
        throw InputError("malformed integer: " + s);
    return z;
}

}  // namespace

Rational parse_rational(const std::string& s) {
    if (s.empty()) throw InputError("empty rational literal");
    const auto slash = s.find('/');
    if (slash != std::string::npos) {
        const std::string num = s.substr(0, slash), den = s.substr(slash + 1);
        if (num.empty() || den.empty()) throw InputError("malformed rational: " + s);
        const Integer numz = int10(num), denz = int10(den);
        if (denz == 0) throw InputError("zero denominator: " + s);
        Rational r{numz, denz};
        r.canonicalize();
        return r;
    }
    const auto epos = s.find_first_of("eE");
    if (epos != std::string::npos) {
        // scientific notation stays exact: scale the mantissa by a power of ten
        const std::string mant = s.substr(0, epos), expo = s.substr(epos + 1);
        if (mant.empty() || expo.empty()) throw InputError("malformed literal: " + s);
        long e;
        try {
            std::size_t used = 0;
            e = std::stol(expo, &used);
            if (used != expo.size()) throw std::invalid_argument(expo);
        } catch (const std::exception&) {
            throw InputError("malformed exponent: " + s);
        }
        Integer ten_pow;
        mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, static_cast<unsigned long>(e < 0 ? -e : e));
        Rational r = parse_rational(mant);
        if (e >= 0)
            r *= Rational(ten_pow);
        else
            r /= Rational(ten_pow);
        return r;
    }
    const auto dot = s.find('.');
    if (dot != std::string::npos) {
        const std::string whole = s.substr(0, dot), frac = s.substr(dot + 1);
        std::string digits = whole + frac;
        bool neg = false;
        if (!digits.empty() && (digits[0] == '-' || digits[0] == '+')) {
            neg = digits[0] == '-';
            digits = digits.substr(1);
        }
        if (digits.empty()) throw InputError("malformed decimal: " + s);
        for (char c : digits)
            if (!std::isdigit(static_cast<unsigned char>(c))) throw InputError("malformed decimal: " + s);
        const Integer num = int10(digits);
        Integer den;
        mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
        Rational r{neg ? Integer(-num) : num, den};
        r.canonicalize();
        return r;
    }
    return Rational(int10(s));
}

std::string format_rational(const Rational& x) {
    if (x.get_den() == 1) return x.get_num().get_str();
    return x.get_num().get_str() + "/" + x.get_den().get_str();
}

namespace {

// Continued-fraction walk: both bounds assumed finite, lo <= hi.
Rational simplest_rec(const Rational& lo, const Rational& hi) {
    Integer fl;
    mpz_fdiv_q(fl.get_mpz_t(), lo.get_num().get_mpz_t(), lo.get_den().get_mpz_t());
    const Rational floor_lo(fl);
    if (floor_lo >= lo) return floor_lo;           // lo is an integer
    if (Rational(fl + 1) <= hi) return Rational(fl + 1);  // an integer sits inside
    const Rational inner =
        simplest_rec(Rational(1) / (hi - floor_lo), Rational(1) / (lo - floor_lo));
    return floor_lo + Rational(1) / inner;
}

}  // namespace

Rational simplest_in_interval(const Rational& lo, const Rational& hi) {
    if (lo > hi) throw InputError("simplest_in_interval: lo > hi");
    if (lo == hi) return lo;
    return simplest_rec(lo, hi);
}

std::optional<Rational> exact_sqrt(const Rational& x) {
    if (sgn(x) < 0) return std::nullopt;
    if (sgn(x) == 0) return Rational(0);
    Integer rn, rd;
    if (!mpz_perfect_square_p(x.get_num().get_mpz_t())) return std::nullopt;
    if (!mpz_perfect_square_p(x.get_den().get_mpz_t())) return std::nullopt;
    mpz_sqrt(rn.get_mpz_t(), x.get_num().get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), x.get_den().get_mpz_t());
    Rational r(rn, rd);
    r.canonicalize();
    return r;
}

}  // namespace gst
