#pragma once

#include <optional>
#include <vector>

#include "gst/model.hpp"
#include "gst/quadform.hpp"
#include "gst/scalar.hpp"

namespace gst::points {

/// Float-mode verdict thresholds. Exact mode ignores them.
struct Tolerances {
    double psi_tol = 1e-10;
    double influence_margin = 1e-10;
};

/// Verdicts for one point: inside the box, independence (psi = 0), influence
/// (some coordinate differs from its mirror), and their conjunction.
struct MembershipReport {
    Vec p;
    bool in_box = false;
    Scalar psi_value;
    bool in_ind = false;
    bool in_inf = false;
    bool in_gst = false;
    std::optional<int> influence_witness;  // 1-based s with p_s != p_{n-s+1}
};

MembershipReport membership(const Vec& p, const Tolerances& tol = {});

/// Brute-force influence of the symmetric game built from p; agrees with
/// membership().in_inf in either mode.
bool influence_oracle(const Vec& p, model::InfluenceMode mode);

/// f(theta) = (1+theta)^{2n-2} - 2^{n-1} theta^2 (1+theta^2)^{n-2}
///          - 2^{2n-3} theta^{n-2};
/// psi of the power point (theta, ..., theta^n) equals theta^2 f(theta) / 2^{2n-2}.
Rational f_eval(int n, const Rational& theta);
double f_eval(int n, double theta);

/// Bisection bracket for one root; `exact` is set when the smallest-
/// denominator rational inside the bracket is verified to be a root.
struct RootBracket {
    Rational lo, hi;
    std::optional<Rational> exact;
    double mid() const { return to_double((lo + hi) / 2); }
};

/// All sign-change roots of f on (0,1): exact-sign scan on a dyadic grid
/// (initial spacing 2^-10, adaptive midpoint refinement, extra depth next to
/// theta = 1 where f vanishes), then bisection to width <= tol. The endpoints
/// 0 and 1 are excluded; double roots without a sign change are out of scope.
std::vector<RootBracket> theta_roots(int n, const Rational& tol);

/// The power-family point (theta, theta^2, ..., theta^n), theta in (0,1).
Vec theta_point(int n, const Scalar& theta);

/// Quadratic certificate a2 x^2 + a1 x + a0 = 0 for one irrational coordinate,
/// with an exact isolating interval (sign change verified) inside (0,1).
struct QuadCertificate {
    Rational a2, a1, a0;
    Rational lo, hi;
    std::optional<Rational> exact_root;

    Rational eval(const Rational& x) const { return a2 * x * x + a1 * x + a0; }
    void refine(int bits);           // shrink the isolating interval
    bool root_below(const Rational& c);  // certified root < c
    bool root_above(const Rational& c);  // certified root > c
};

/// Point template with every coordinate fixed except one, which is pinned by
/// a quadratic certificate. Lets exact verification run without an algebraic
/// number tower.
struct CertifiedPoint {
    int n = 0;
    RVec fixed;      // placeholder at `slot`
    int slot = 0;    // 0-based index of the certified coordinate
    QuadCertificate cert;

    FVec approx() const;
};

/// The boundary family (1, 0, ..., 0, x) with x = 1/(sqrt(2^{n-1}) - 1).
/// Exact rational for odd n (sqrt(2^{n-1}) is integral), certified for even n.
/// n = 3 is rejected: the formula lands on (1, 0, 1), which has no influence.
CertifiedPoint boundary_point(int n);

/// The mirrored partner 1 - p of a certified point, with its certificate
/// transformed accordingly.
CertifiedPoint involution(const CertifiedPoint& p);

/// Membership with exact certificate verification: psi vanishes because its
/// restriction to the template is a rational multiple of the certificate
/// quadratic; influence and box checks run through interval refinement.
MembershipReport membership(const CertifiedPoint& p);

/// 1 - p entrywise; preserves all three verdicts.
Vec involution(const Vec& p);

/// x p + y 1; psi scales by x^2 exactly. The result may leave the box.
Vec affine_point(const Vec& p, const Scalar& x, const Scalar& y);

/// Witness for p = a q + b 1 with a != 0.
struct EquivWitness {
    Scalar a, b;
};

std::optional<EquivWitness> equivalent(const Vec& p, const Vec& q);

/// Bilinear cross term 2 p^T Q_n q = p^T H_n q; the obstruction to the
/// segment pq staying inside the independence set.
Scalar cross_term(const Vec& p, const Vec& q);

template <class T>
T cross_term(const std::vector<T>& p, const std::vector<T>& q);

/// True when every entry equals the first (the p ~ 1 class).
bool is_constant(const Vec& p);

}  // namespace gst::points
