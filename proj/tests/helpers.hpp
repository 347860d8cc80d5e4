#pragma once

// Shared test utilities: a small quadratic-extension field for exact checks at
// the irrational boundary coordinates, pools of exact rational points of the
// solution space, and seeded bounded-rational sampling.

#include <optional>
#include <vector>

#include "gst/model.hpp"
#include "gst/points.hpp"
#include "gst/quadform.hpp"
#include "gst/rng.hpp"
#include "gst/scalar.hpp"

namespace testutil {

using gst::Integer;
using gst::Rational;
using gst::RVec;

/// Elements a + b sqrt(2). A field, so the templated oracles run on it
/// unchanged; equality against zero is exact because sqrt(2) is irrational.
struct Q2 {
    Rational a, b;

    Q2() : a(0), b(0) {}
    Q2(int v) : a(v), b(0) {}        // NOLINT: implicit by design
    Q2(long v) : a(long(v)), b(0) {} // NOLINT
    Q2(Rational v) : a(std::move(v)), b(0) {}  // NOLINT
    Q2(Rational x, Rational y) : a(std::move(x)), b(std::move(y)) {}

    friend Q2 operator+(const Q2& x, const Q2& y) { return {x.a + y.a, x.b + y.b}; }
    friend Q2 operator-(const Q2& x, const Q2& y) { return {x.a - y.a, x.b - y.b}; }
    friend Q2 operator-(const Q2& x) { return {-x.a, -x.b}; }
    friend Q2 operator*(const Q2& x, const Q2& y) {
        return {x.a * y.a + 2 * x.b * y.b, x.a * y.b + x.b * y.a};
    }
    friend Q2 operator/(const Q2& x, const Q2& y) {
        const Rational d = y.a * y.a - 2 * y.b * y.b;
        const Q2 num = x * Q2{y.a, -y.b};
        return {num.a / d, num.b / d};
    }
    Q2& operator+=(const Q2& y) { return *this = *this + y; }
    Q2& operator-=(const Q2& y) { return *this = *this - y; }
    Q2& operator*=(const Q2& y) { return *this = *this * y; }
    friend bool operator==(const Q2&, const Q2&) = default;

    int sign() const {
        const int sa = sgn(a), sb = sgn(b);
        if (sb == 0) return sa;
        if (sa == 0) return sb;
        if (sa == sb) return sa;
        const int mag = sgn(a * a - 2 * b * b);
        return sa > 0 ? mag : -mag;
    }
    bool positive() const { return sign() > 0; }
    double approx() const { return gst::to_double(a) + gst::to_double(b) * 1.4142135623730951; }
};

/// The boundary-family coordinate 1/(sqrt(2^{n-1}) - 1) for even n, as an
/// exact element of Q2: 1/(2^h sqrt(2) - 1) with h = (n-2)/2.
inline Q2 boundary_coordinate_q2(int n) {
    const Rational h(gst::pow2((n - 2) / 2));
    // (2^h sqrt2 + 1) / (2^{n-1} - 1)
    const Rational den(gst::pow2(n - 1) - 1);
    return {Rational(1) / den, h / den};
}

/// Seeded rationals with numerator and denominator bounded by 64.
class RationalSampler {
  public:
    explicit RationalSampler(std::uint64_t seed) : rng_(seed) {}

    Rational in_unit() {  // in [0, 1]
        const long den = 1 + static_cast<long>(rng_.next() % 64);
        const long num = static_cast<long>(rng_.next() % (den + 1));
        return gst::ratio(num, den);
    }
    Rational signed_small() {  // in [-1, 1]
        Rational r = in_unit();
        return (rng_.next() & 1) ? r : Rational(-r);
    }
    Rational nonzero_signed() {
        for (;;) {
            Rational r = signed_small();
            if (sgn(r) != 0) return r;
        }
    }
    std::uint64_t raw() { return rng_.next(); }

  private:
    gst::SplitMix64 rng_;
};

/// Exact rational points of the independence set (psi = 0, inside the box),
/// optionally with influence. Construction per dimension:
///   n = 3: the solution plane is linear in the first coordinate;
///   odd n: chords through an alternating two-value point (always a solution);
///   n = 6: chords through a fixed integer solution of the form;
///   n = 4: none exist (the rational quadric has only constant points), and
///          callers are expected to use the Q2 boundary family instead.
std::vector<RVec> exact_ind_points(int n, int count, std::uint64_t seed, bool require_influence);

inline bool has_influence(const RVec& p) {
    const int n = static_cast<int>(p.size());
    for (int s = 1; s <= n; ++s)
        if (p[s - 1] != p[n - s]) return true;
    return false;
}

/// Central finite difference of psi in float mode.
gst::FVec psi_gradient_fd(const gst::FVec& p, double h);

}  // namespace testutil
