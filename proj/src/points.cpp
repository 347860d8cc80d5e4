#include "gst/points.hpp"

#include <algorithm>
#include <cmath>

namespace gst::points {

namespace {

template <class T>
std::optional<int> influence_witness_impl(const std::vector<T>& p) {
    const int n = static_cast<int>(p.size());
    for (int s = 1; s <= n; ++s)
        if (!(p[s - 1] == p[n - s])) return s;
    return std::nullopt;
}

std::optional<int> influence_witness_float(const FVec& p, double margin) {
    const int n = static_cast<int>(p.size());
    for (int s = 1; s <= n; ++s)
        if (std::abs(p[s - 1] - p[n - s]) > margin) return s;
    return std::nullopt;
}

}  // namespace

MembershipReport membership(const Vec& p, const Tolerances& tol) {
    MembershipReport rep;
    rep.p = p;
    rep.psi_value = quadform::psi(p);
    if (p.is_exact()) {
        rep.in_box = std::all_of(p.rat().begin(), p.rat().end(),
                                 [](const Rational& x) { return x >= 0 && x <= 1; });
        rep.in_ind = rep.in_box && sgn(rep.psi_value.rat()) == 0;
        rep.influence_witness = influence_witness_impl(p.rat());
    } else {
        rep.in_box = std::all_of(p.flt().begin(), p.flt().end(),
                                 [](double x) { return x >= 0.0 && x <= 1.0; });
        rep.in_ind = rep.in_box && std::abs(rep.psi_value.flt()) <= tol.psi_tol;
        rep.influence_witness = influence_witness_float(p.flt(), tol.influence_margin);
    }
    rep.in_inf = rep.influence_witness.has_value();
    rep.in_gst = rep.in_ind && rep.in_inf;
    return rep;
}

bool influence_oracle(const Vec& p, model::InfluenceMode mode) {
    if (p.is_exact()) return model::influence_oracle(model::gst_spec(p.rat()), mode);
    return model::influence_oracle(model::gst_spec(p.flt()), mode);
}

Rational f_eval(int n, const Rational& theta) {
    if (n < 3) throw InputError("f needs n >= 3");
    const Rational a = rat_pow(1 + theta, 2 * n - 2);
    const Rational b = Rational(pow2(n - 1)) * theta * theta * rat_pow(1 + theta * theta, n - 2);
    const Rational c = Rational(pow2(2 * n - 3)) * rat_pow(theta, n - 2);
    return a - b - c;
}

double f_eval(int n, double theta) {
    if (n < 3) throw InputError("f needs n >= 3");
    return std::pow(1 + theta, 2 * n - 2) -
           std::ldexp(theta * theta * std::pow(1 + theta * theta, n - 2), n - 1) -
           std::ldexp(std::pow(theta, n - 2), 2 * n - 3);
}

namespace {

struct Scanner {
    int n;
    std::vector<RootBracket> out;

    void exact_root(const Rational& x) {
        if (x == 0 || x == 1) return;  // no-influence endpoints
        out.push_back(RootBracket{x, x, x});
    }

    void bracket(Rational lo, Rational hi, const Rational& tol) {
        Rational flo = f_eval(n, lo);
        while (hi - lo > tol) {
            const Rational mid = (lo + hi) / 2;
            const Rational fm = f_eval(n, mid);
            if (sgn(fm) == 0) {
                exact_root(mid);
                return;
            }
            if (sgn(flo) * sgn(fm) < 0)
                hi = mid;
            else {
                lo = mid;
                flo = fm;
            }
        }
        RootBracket rb{lo, hi, std::nullopt};
        const Rational guess = simplest_in_interval(lo, hi);
        if (sgn(f_eval(n, guess)) == 0 && guess != 0 && guess != 1) rb.exact = guess;
        out.push_back(rb);
    }

    // Splits cells whose endpoint signs agree, in case a pair of close roots
    // hides inside; depth 2 everywhere, deeper next to theta = 1.
    void scan(const Rational& lo, const Rational& hi, int slo, int shi, int depth,
              const Rational& tol) {
        if (slo * shi < 0) {
            bracket(lo, hi, tol);
            return;
        }
        if (depth <= 0) return;
        const Rational mid = (lo + hi) / 2;
        const int smid = sgn(f_eval(n, mid));
        if (smid == 0) {
            exact_root(mid);
            // a simple root flips sign; probe both shoulders for companions
            scan(lo, mid, slo, smid, 0, tol);
            scan(mid, hi, smid, shi, 0, tol);
            return;
        }
        scan(lo, mid, slo, smid, depth - 1, tol);
        scan(mid, hi, smid, shi, depth - 1, tol);
    }
};

}  // namespace

std::vector<RootBracket> theta_roots(int n, const Rational& tol) {
    if (n < 3) throw InputError("theta_roots needs n >= 3");
    if (sgn(tol) <= 0) throw InputError("theta_roots needs tol > 0");
    Scanner sc{n, {}};
    constexpr unsigned long kGridBits = 10;
    constexpr unsigned long kEdgeBits = 20;  // right sentinel: f(1) = 0 exactly
    const long cells = 1L << kGridBits;
    const Rational right_sentinel = 1 - dyadic(1, kEdgeBits);

    std::vector<Rational> xs;
    std::vector<int> signs;
    xs.reserve(cells + 1);
    for (long a = 0; a <= cells; ++a) xs.push_back(dyadic(a, kGridBits));
    xs.back() = right_sentinel;
    for (const auto& x : xs) {
        const int s = sgn(f_eval(n, x));
        if (s == 0) sc.exact_root(x);
        signs.push_back(s);
    }
    for (long a = 0; a < cells; ++a) {
        if (signs[a] == 0 || signs[a + 1] == 0) continue;  // exact roots already taken
        const bool near_one = (a >= cells - 2);
        sc.scan(xs[a], xs[a + 1], signs[a], signs[a + 1], near_one ? 10 : 2, tol);
    }
    std::sort(sc.out.begin(), sc.out.end(),
              [](const RootBracket& a, const RootBracket& b) { return a.lo < b.lo; });
    return sc.out;
}

Vec theta_point(int n, const Scalar& theta) {
    if (n < 2) throw InputError("theta_point needs n >= 2");
    if (theta.exact()) {
        const Rational& t = theta.rat();
        if (!(t > 0 && t < 1)) throw InputError("theta must lie in (0,1)");
        RVec p;
        p.reserve(n);
        Rational acc(1);
        for (int k = 1; k <= n; ++k) {
            acc *= t;
            p.push_back(acc);
        }
        return Vec::exact(std::move(p));
    }
    const double t = theta.flt();
    if (!(t > 0 && t < 1)) throw InputError("theta must lie in (0,1)");
    FVec p;
    p.reserve(n);
    double acc = 1;
    for (int k = 1; k <= n; ++k) {
        acc *= t;
        p.push_back(acc);
    }
    return Vec::approx(std::move(p));
}

void QuadCertificate::refine(int bits) {
    if (exact_root) {
        lo = hi = *exact_root;
        return;
    }
    int slo = sgn(eval(lo));
    for (int i = 0; i < bits && lo != hi; ++i) {
        const Rational mid = (lo + hi) / 2;
        const int sm = sgn(eval(mid));
        if (sm == 0) {
            exact_root = mid;
            lo = hi = mid;
            return;
        }
        if (slo * sm < 0)
            hi = mid;
        else {
            lo = mid;
            slo = sm;
        }
    }
}

bool QuadCertificate::root_below(const Rational& c) {
    for (int rounds = 0; rounds < 8; ++rounds) {
        if (hi < c) return true;
        if (lo > c) return false;
        if (exact_root) return *exact_root < c;
        refine(16);
    }
    // c sits inside a shrinking interval; it can only survive if it is the root
    return eval(c) == 0 ? false : throw NumericalError("certificate interval refinement stalled");
}

bool QuadCertificate::root_above(const Rational& c) {
    if (exact_root) return *exact_root > c;
    return !root_below(c) && !(eval(c) == 0);
}

FVec CertifiedPoint::approx() const {
    FVec out;
    out.reserve(n);
    const double root =
        cert.exact_root ? to_double(*cert.exact_root) : to_double((cert.lo + cert.hi) / 2);
    for (int i = 0; i < n; ++i) out.push_back(i == slot ? root : to_double(fixed[i]));
    return out;
}

CertifiedPoint boundary_point(int n) {
    if (n < 4)
        throw InputError(
            "boundary family needs n >= 4: at n = 3 the construction lands on (1,0,1), "
            "which satisfies independence but not influence");
    const Integer N = pow2(n - 1);
    CertifiedPoint cp;
    cp.n = n;
    cp.fixed.assign(n, Rational(0));
    cp.fixed[0] = 1;
    cp.slot = n - 1;
    cp.cert.a2 = Rational(1 - N);
    cp.cert.a1 = 2;
    cp.cert.a0 = 1;
    if (n % 2 == 1) {
        // sqrt(N) = 2^{(n-1)/2} is integral, so the coordinate is rational
        const Integer s = pow2((n - 1) / 2);
        Rational root(Integer(1), s - 1);
        root.canonicalize();
        cp.cert.exact_root = root;
        cp.cert.lo = cp.cert.hi = root;
        return cp;
    }
    cp.cert.lo = 0;
    cp.cert.hi = 1;  // eval(0) = 1 > 0, eval(1) = 4 - N < 0 for n >= 4
    cp.cert.refine(80);
    return cp;
}

CertifiedPoint involution(const CertifiedPoint& p) {
    CertifiedPoint out;
    out.n = p.n;
    out.slot = p.slot;
    out.fixed.reserve(p.n);
    for (const auto& x : p.fixed) out.fixed.push_back(1 - x);
    // substitute x -> 1 - x into the quadratic
    out.cert.a2 = p.cert.a2;
    out.cert.a1 = -(2 * p.cert.a2 + p.cert.a1);
    out.cert.a0 = p.cert.a2 + p.cert.a1 + p.cert.a0;
    out.cert.lo = 1 - p.cert.hi;
    out.cert.hi = 1 - p.cert.lo;
    if (p.cert.exact_root) out.cert.exact_root = 1 - *p.cert.exact_root;
    return out;
}

namespace {

// psi restricted to the template is quadratic in the free coordinate;
// recover its coefficients by evaluation at x = 0, 1, -1.
struct RestrictedQuadratic {
    Rational c2, c1, c0;
};

RestrictedQuadratic restrict_psi(const CertifiedPoint& p) {
    auto eval_at = [&](const Rational& x) {
        RVec v = p.fixed;
        v[p.slot] = x;
        return quadform::psi<Rational>(v);
    };
    const Rational at0 = eval_at(0), at1 = eval_at(1), atm1 = eval_at(-1);
    RestrictedQuadratic r;
    r.c0 = at0;
    r.c1 = (at1 - atm1) / 2;
    r.c2 = (at1 + atm1) / 2 - at0;
    return r;
}

}  // namespace

MembershipReport membership(const CertifiedPoint& p) {
    MembershipReport rep;
    rep.p = Vec::approx(p.approx());

    QuadCertificate cert = p.cert;
    // box: fixed coordinates exactly, the certified one by interval
    bool box = true;
    for (int i = 0; i < p.n; ++i)
        if (i != p.slot && (p.fixed[i] < 0 || p.fixed[i] > 1)) box = false;
    cert.refine(8);
    if (!(cert.lo >= 0 && cert.hi <= 1)) box = false;
    rep.in_box = box;

    // independence: the restriction of psi must be a rational multiple of the
    // certificate quadratic, hence zero at its root
    const RestrictedQuadratic rq = restrict_psi(p);
    bool proportional;
    if (sgn(p.cert.a2) != 0) {
        const Rational lambda = rq.c2 / p.cert.a2;
        proportional = (rq.c1 == lambda * p.cert.a1) && (rq.c0 == lambda * p.cert.a0);
    } else {
        proportional = sgn(rq.c2) == 0 && sgn(rq.c1) == 0 && sgn(rq.c0) == 0;
    }
    rep.in_ind = rep.in_box && proportional;
    rep.psi_value =
        proportional ? Scalar(Rational(0)) : Scalar(quadform::psi<double>(p.approx()));

    // influence: find s with p_s != p_{n-s+1}, treating the certified slot by
    // interval separation
    for (int s = 1; s <= p.n && !rep.influence_witness; ++s) {
        const int a = s - 1, b = p.n - s;
        if (a == b) continue;
        if (a != p.slot && b != p.slot) {
            if (!(p.fixed[a] == p.fixed[b])) rep.influence_witness = s;
        } else {
            const Rational& other = p.fixed[a == p.slot ? b : a];
            if (cert.root_below(other) || cert.root_above(other)) rep.influence_witness = s;
        }
    }
    rep.in_inf = rep.influence_witness.has_value();
    rep.in_gst = rep.in_ind && rep.in_inf;
    return rep;
}

Vec involution(const Vec& p) {
    if (p.is_exact()) {
        RVec out;
        out.reserve(p.size());
        for (const auto& x : p.rat()) out.push_back(1 - x);
        return Vec::exact(std::move(out));
    }
    FVec out;
    out.reserve(p.size());
    for (double x : p.flt()) out.push_back(1.0 - x);
    return Vec::approx(std::move(out));
}

Vec affine_point(const Vec& p, const Scalar& x, const Scalar& y) {
    if (p.is_exact() != x.exact() || x.exact() != y.exact())
        throw InputError("affine_point needs a single mode");
    if (p.is_exact()) {
        RVec out;
        out.reserve(p.size());
        for (const auto& v : p.rat()) out.push_back(x.rat() * v + y.rat());
        return Vec::exact(std::move(out));
    }
    FVec out;
    out.reserve(p.size());
    for (double v : p.flt()) out.push_back(x.flt() * v + y.flt());
    return Vec::approx(std::move(out));
}

namespace {

template <class T>
std::optional<std::pair<T, T>> solve_witness(const std::vector<T>& p, const std::vector<T>& q,
                                             double rel_tol) {
    const std::size_t n = p.size();
    std::size_t i = 0, j = 0;
    bool found = false;
    for (std::size_t a = 0; a < n && !found; ++a)
        for (std::size_t b = a + 1; b < n && !found; ++b)
            if (!(q[a] == q[b])) {
                i = a;
                j = b;
                found = true;
            }
    auto close = [&](const T& u, const T& v) {
        if constexpr (std::is_floating_point_v<T>) {
            const double scale = std::max({std::abs(double(u)), std::abs(double(v)), 1.0});
            return std::abs(double(u) - double(v)) <= rel_tol * scale;
        } else {
            (void)rel_tol;
            return u == v;
        }
    };
    if (!found) {
        // q constant: a witness exists only when p is constant too
        for (std::size_t a = 1; a < n; ++a)
            if (!close(p[a], p[0])) return std::nullopt;
        return std::make_pair(T(1), T(p[0] - q[0]));
    }
    const T a = (p[i] - p[j]) / (q[i] - q[j]);
    if (a == T(0)) return std::nullopt;  // p constant, q not
    const T b = p[i] - a * q[i];
    for (std::size_t k = 0; k < n; ++k)
        if (!close(p[k], a * q[k] + b)) return std::nullopt;
    return std::make_pair(a, b);
}

}  // namespace

std::optional<EquivWitness> equivalent(const Vec& p, const Vec& q) {
    if (p.size() != q.size()) throw InputError("equivalent needs matching n");
    if (p.is_exact() != q.is_exact()) throw InputError("equivalent needs a single mode");
    if (p.is_exact()) {
        auto w = solve_witness<Rational>(p.rat(), q.rat(), 0);
        if (!w) return std::nullopt;
        return EquivWitness{Scalar(w->first), Scalar(w->second)};
    }
    auto w = solve_witness<double>(p.flt(), q.flt(), 1e-9);
    if (!w) return std::nullopt;
    return EquivWitness{Scalar(w->first), Scalar(w->second)};
}

template <class T>
T cross_term(const std::vector<T>& p, const std::vector<T>& q) {
    if (p.size() != q.size()) throw InputError("cross_term needs matching n");
    // p^T H q == psi(p+q) - psi(p) - psi(q); evaluated directly so the exact
    // path stays in one field
    std::vector<T> sum(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) sum[i] = p[i] + q[i];
    return quadform::psi(sum) - quadform::psi(p) - quadform::psi(q);
}

template Rational cross_term<Rational>(const RVec&, const RVec&);
template double cross_term<double>(const FVec&, const FVec&);

Scalar cross_term(const Vec& p, const Vec& q) {
    if (p.is_exact() != q.is_exact()) throw InputError("cross_term needs a single mode");
    if (p.is_exact()) return Scalar(cross_term<Rational>(p.rat(), q.rat()));
    return Scalar(cross_term<double>(p.flt(), q.flt()));
}

bool is_constant(const Vec& p) {
    if (p.is_exact()) {
        for (const auto& x : p.rat())
            if (!(x == p.rat()[0])) return false;
        return true;
    }
    for (double x : p.flt())
        if (x != p.flt()[0]) return false;
    return true;
}

}  // namespace gst::points
