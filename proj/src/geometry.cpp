#include "gst/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "gst/rng.hpp"

namespace gst::geometry {

namespace {

double psi_at(const FVec& p) { return quadform::psi<double>(p); }

bool in_box(const FVec& p) {
    return std::all_of(p.begin(), p.end(), [](double x) { return x >= 0.0 && x <= 1.0; });
}

// Witness margin: how far the point is from the no-influence subspace, in the
// sense of its best mirror-pair separation. Zero exactly on that subspace.
double influence_margin(const FVec& p) {
    const int n = static_cast<int>(p.size());
    double m = 0;
    for (int s = 1; s <= n; ++s) m = std::max(m, std::abs(p[s - 1] - p[n - s]));
    return m;
}

}  // namespace

EigenFrame eigen_frame(int n) {
    if (n < 3) throw InputError("eigen_frame needs n >= 3");
    const MatF Q = quadform::to_float(quadform::hessian(n).Q);
    const auto es = quadform::eigen_sym(Q, 1e-13);
    const double thr = quadform::zero_threshold(Q);

    int zero_idx = 0;
    for (int j = 1; j < n; ++j)
        if (std::abs(es.values[j]) < std::abs(es.values[zero_idx])) zero_idx = j;
    if (std::abs(es.values[zero_idx]) > thr)
        throw NumericalError("no eigenvalue within the zero threshold");

    std::vector<int> order{zero_idx};
    for (int j = 0; j < n; ++j)
        if (j != zero_idx && es.values[j] > 0) order.push_back(j);
    const int k = static_cast<int>(order.size()) - 1;
    for (int j = 0; j < n; ++j)
        if (j != zero_idx && es.values[j] <= 0) order.push_back(j);
    const int l = n - 1 - k;

    EigenFrame f;
    f.n = n;
    f.k = k;
    f.l = l;
    f.P = MatF(n, n);
    f.d.resize(n);
    for (int col = 0; col < n; ++col) {
        f.d[col] = es.values[order[col]];
        for (int i = 0; i < n; ++i) f.P(i, col) = es.vectors(i, order[col]);
    }
    f.d[0] = es.values[zero_idx];
    return f;
}

FVec to_eigen_coords(const EigenFrame& f, const FVec& p) {
    FVec y(f.n, 0.0);
    for (int j = 0; j < f.n; ++j)
        for (int i = 0; i < f.n; ++i) y[j] += f.P(i, j) * (p[i] - 0.5);
    return y;
}

FVec from_eigen_coords(const EigenFrame& f, const FVec& y) {
    FVec p(f.n, 0.5);
    for (int i = 0; i < f.n; ++i)
        for (int j = 0; j < f.n; ++j) p[i] += f.P(i, j) * y[j];
    return p;
}

ComponentLabel component_label(const Vec& p, const points::Tolerances& tol) {
    return component_label(eigen_frame(static_cast<int>(p.size())), p.as_double(), tol);
}

ComponentLabel component_label(const EigenFrame& f, const FVec& p, const points::Tolerances& tol) {
    if (std::min(f.k, f.l) != 1)
        throw InputError("component labels are defined only when min(k, l) = 1");
    const auto rep = points::membership(Vec::approx(p), tol);
    if (!rep.in_gst) throw InputError("component_label needs a point of GST_n");
    const FVec y = to_eigen_coords(f, p);
    const int idx = (f.k == 1) ? 1 : 1 + f.k;  // coordinate of the unique-sign eigenvalue
    if (std::abs(y[idx]) < 1e-12)
        throw NumericalError("labelling coordinate vanishes; point sits on the constant spine");
    return ComponentLabel{y[idx] > 0 ? +1 : -1};
}

Vec contraction(const Vec& p, const Scalar& t, const Vec& x) {
    if (p.size() != x.size()) throw InputError("contraction needs matching n");
    if (p.is_exact() != x.is_exact() || p.is_exact() != t.exact())
        throw InputError("contraction needs a single mode");
    if (!points::is_constant(x))
        throw InputError("contraction target must be equivalent to the all-ones line (constant)");
    if (p.is_exact()) {
        const Rational& tt = t.rat();
        if (tt < 0 || tt > 1) throw InputError("t must lie in [0,1]");
        if (sgn(quadform::psi<Rational>(p.rat())) != 0)
            throw InputError("contraction needs p in the independence set");
        RVec out;
        out.reserve(p.size());
        for (std::size_t i = 0; i < p.size(); ++i)
            out.push_back((1 - tt) * p.rat()[i] + tt * x.rat()[i]);
        return Vec::exact(std::move(out));
    }
    const double tt = t.flt();
    if (!(tt >= 0 && tt <= 1)) throw InputError("t must lie in [0,1]");
    if (std::abs(quadform::psi<double>(p.flt())) > points::Tolerances{}.psi_tol)
        throw InputError("contraction needs p in the independence set");
    FVec out;
    out.reserve(p.size());
    for (std::size_t i = 0; i < p.size(); ++i)
        out.push_back((1 - tt) * p.flt()[i] + tt * x.flt()[i]);
    return Vec::approx(std::move(out));
}

namespace {

// Classification core over one field. The interior of the segment lies in the
// independence set iff the cross term vanishes; influence can then only fail
// where every coordinate meets its mirror, which is the intersection of one
// linear condition per mirror pair: the whole line, one parameter, or nothing.
template <class T>
void classify_segment(const std::vector<T>& p, const std::vector<T>& q, int samples,
                      const points::Tolerances& tol, SegmentReport& rep) {
    const int n = static_cast<int>(p.size());
    auto near_zero = [&](const T& v) {
        if constexpr (std::is_floating_point_v<T>)
            return std::abs(v) <= tol.psi_tol;
        else
            return sgn(v) == 0;
    };
    auto same_t = [&](const T& a, const T& b) {
        if constexpr (std::is_floating_point_v<T>)
            return std::abs(a - b) <= 1e-9;
        else
            return a == b;
    };

    const T ct = points::cross_term(p, q);
    rep.ct = Scalar(ct);
    if (!near_zero(ct)) {
        rep.kind = SegmentKind::InteriorOutsideInd;
        rep.note = "interior psi equals t(1-t) CT and never vanishes strictly inside";
        return;
    }

    bool empty = false, have_t = false;
    T common_t(0);
    for (int s = 1; s <= (n + 1) / 2 && !empty; ++s) {
        const int a = s - 1, b = n - s;
        if (a == b) continue;
        const T dp = p[a] - p[b], dq = q[a] - q[b];
        const T slope = dp - dq;
        if (near_zero(slope)) {
            if (!near_zero(dq)) empty = true;  // this pair never meets: no failure anywhere
            continue;                          // pair meets everywhere: no constraint
        }
        const T ts = dq / (dq - dp);
        if (have_t && !same_t(ts, common_t)) empty = true;
        common_t = ts;
        have_t = true;
    }

    // endpoints carry influence, so "failure everywhere" cannot happen
    const bool inside = have_t && !empty && common_t > T(0) && common_t < T(1);
    if (inside) {
        rep.kind = SegmentKind::AllInIndNotGST;
        rep.failure_ts.push_back(Scalar(common_t));
        std::vector<T> at(n);
        for (int i = 0; i < n; ++i) at[i] = common_t * p[i] + (T(1) - common_t) * q[i];
        if constexpr (std::is_floating_point_v<T>)
            rep.failure_points.push_back(Vec::approx(at));
        else
            rep.failure_points.push_back(Vec::exact(at));
    } else {
        rep.kind = SegmentKind::AllInGST;
    }

    for (int i = 1; i <= samples; ++i) {
        ++rep.samples_checked;
        const T t = T(i) / T(samples + 1);
        std::vector<T> v(n);
        for (int j = 0; j < n; ++j) v[j] = t * p[j] + (T(1) - t) * q[j];
        const T ps = quadform::psi(v);
        bool bad;
        if constexpr (std::is_floating_point_v<T>)
            bad = std::abs(ps) > 10 * tol.psi_tol;
        else
            bad = sgn(ps) != 0;
        if (bad) {
            rep.kind = SegmentKind::Mixed;
            rep.note = "zero cross term but a sampled interior point left the independence set";
        }
    }
}

}  // namespace

SegmentReport segment_classify(const Vec& p, const Vec& q, int samples,
                               const points::Tolerances& tol) {
    if (p.size() != q.size()) throw InputError("segment_classify needs matching n");
    if (p.is_exact() != q.is_exact()) throw InputError("segment_classify needs a single mode");
    const auto rp = points::membership(p, tol);
    const auto rq = points::membership(q, tol);
    if (!rp.in_gst || !rq.in_gst) throw InputError("segment endpoints must lie in GST_n");

    SegmentReport rep;
    if (p.is_exact())
        classify_segment<Rational>(p.rat(), q.rat(), samples, tol, rep);
    else
        classify_segment<double>(p.flt(), q.flt(), samples, tol, rep);
    return rep;
}

namespace {

struct Blocks {
    double y0 = 0;
    FVec u, w;  // positive / negative eigenblock coordinates
};

Blocks split(const EigenFrame& f, const FVec& y) {
    Blocks b;
    b.y0 = y[0];
    b.u.assign(y.begin() + 1, y.begin() + 1 + f.k);
    b.w.assign(y.begin() + 1 + f.k, y.end());
    return b;
}

FVec join(const EigenFrame& f, const Blocks& b) {
    FVec y;
    y.reserve(f.n);
    y.push_back(b.y0);
    y.insert(y.end(), b.u.begin(), b.u.end());
    y.insert(y.end(), b.w.begin(), b.w.end());
    return y;
}

double block_norm(const FVec& v, const FVec& d, int offset, double sign) {
    double s = 0;
    for (std::size_t i = 0; i < v.size(); ++i) s += sign * d[offset + i] * v[i] * v[i];
    return std::sqrt(std::max(s, 0.0));
}

// Rescales both blocks to the geometric mean of their weighted norms;
// idempotent on the quadric.
bool retract(const EigenFrame& f, Blocks& b) {
    const double a = block_norm(b.u, f.d, 1, +1.0);
    const double c = block_norm(b.w, f.d, 1 + f.k, -1.0);
    if (a <= 0 || c <= 0) return false;
    const double g = std::sqrt(a * c);
    for (auto& x : b.u) x *= g / a;
    for (auto& x : b.w) x *= g / c;
    return true;
}

// Weighted coordinates turn each block sphere into a Euclidean one.
FVec to_weighted(const FVec& v, const FVec& d, int offset, double sign) {
    FVec out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = std::sqrt(sign * d[offset + i]) * v[i];
    return out;
}

FVec from_weighted(const FVec& v, const FVec& d, int offset, double sign) {
    FVec out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] / std::sqrt(sign * d[offset + i]);
    return out;
}

double norm2(const FVec& v) {
    double s = 0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

// Great-circle interpolation between same-radius vectors; via points handle
// the antipodal and the 1-dimensional cases.
FVec slerp(const FVec& a, const FVec& b, double t) {
    const double ra = norm2(a);
    double cosw = 0;
    for (std::size_t i = 0; i < a.size(); ++i) cosw += a[i] * b[i];
    cosw = std::clamp(cosw / (ra * norm2(b)), -1.0, 1.0);
    const double w = std::acos(cosw);
    if (w < 1e-12) {
        FVec out(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) out[i] = (1 - t) * a[i] + t * b[i];
        return out;
    }
    const double s = std::sin(w);
    FVec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        out[i] = (std::sin((1 - t) * w) * a[i] + std::sin(t * w) * b[i]) / s;
    // keep the radius exact
    const double r = norm2(out);
    for (auto& x : out) x *= ra / r;
    return out;
}

}  // namespace

std::vector<FVec> surface_sample(int n, int count, double radius, std::uint64_t seed,
                                 const points::Tolerances& tol, long* attempts_out) {
    if (count < 1) throw InputError("surface_sample needs count >= 1");
    if (!(radius > 0)) throw InputError("surface_sample needs radius > 0");
    const EigenFrame f = eigen_frame(n);
    if (f.k < 1 || f.l < 1) throw NumericalError("sampler needs both eigenvalue signs");
    double dmin = std::numeric_limits<double>::infinity();
    for (int j = 1; j < n; ++j) dmin = std::min(dmin, std::abs(f.d[j]));

    SplitMix64 rng(seed);
    std::vector<FVec> accepted;
    const long max_attempts = std::max<long>(1000, 50L * count);
    long attempt = 0;
    for (; attempt < max_attempts && static_cast<int>(accepted.size()) < count; ++attempt) {
        Blocks b;
        b.y0 = rng.uniform(-radius, radius);
        const double t = rng.uniform(0.0, radius * radius * dmin);
        b.u.resize(f.k);
        b.w.resize(f.l);
        for (auto& x : b.u) x = rng.next_normal();
        for (auto& x : b.w) x = rng.next_normal();
        const double a = block_norm(b.u, f.d, 1, +1.0);
        const double c = block_norm(b.w, f.d, 1 + f.k, -1.0);
        if (a <= 0 || c <= 0 || t <= 0) continue;
        const double target = std::sqrt(t);
        for (auto& x : b.u) x *= target / a;
        for (auto& x : b.w) x *= target / c;
        const FVec p = from_eigen_coords(f, join(f, b));
        if (!in_box(p)) continue;
        if (influence_margin(p) <= tol.influence_margin) continue;
        if (std::abs(psi_at(p)) > 1e-9) continue;
        accepted.push_back(p);
    }
    if (attempts_out) *attempts_out = attempt;
    if (accepted.empty()) throw NumericalError("sampler accepted nothing; radius too large");
    return accepted;
}

namespace {

struct LegBuilder {
    const EigenFrame& f;
    double step;
    std::vector<FVec> waypoints;  // eigen-coordinates

    void radial(const FVec& y, double s_from, double s_to, int min_steps = 1) {
        const double dist = std::abs(s_from - s_to) * norm2(y);
        const int steps = std::max(min_steps, static_cast<int>(std::ceil(dist / step)));
        for (int i = 1; i <= steps; ++i) {
            const double s = s_from + (s_to - s_from) * double(i) / steps;
            FVec out(y.size());
            for (std::size_t j = 0; j < y.size(); ++j) out[j] = s * y[j];
            waypoints.push_back(std::move(out));
        }
    }
};

}  // namespace

PathResult path_probe(const Vec& p, const Vec& q, const PathParams& params) {
    if (p.size() != q.size()) throw InputError("path_probe needs matching n");
    const int n = static_cast<int>(p.size());
    const FVec pf = p.as_double(), qf = q.as_double();
    const auto rp = points::membership(Vec::approx(pf));
    const auto rq = points::membership(Vec::approx(qf));
    if (!rp.in_gst || !rq.in_gst) throw InputError("path endpoints must lie in GST_n");

    SurfacePath path;
    path.seed = params.seed;
    path.experimental = (n >= 5 && n <= 7);

    if (pf == qf) {
        path.waypoints = {pf};
        path.max_psi_drift = std::abs(psi_at(pf));
        path.min_influence_margin = influence_margin(pf);
        return path;
    }

    const EigenFrame f = eigen_frame(n);
    if (std::min(f.k, f.l) == 1) {
        const auto lp = component_label(f, pf);
        const auto lq = component_label(f, qf);
        if (lp.sign != lq.sign)
            return DisconnectionCertificate{
                lp.sign, lq.sign,
                "endpoints carry opposite component labels; the surface splits along the "
                "constant spine and no path exists"};
    }

    Blocks bp = split(f, to_eigen_coords(f, pf));
    Blocks bq = split(f, to_eigen_coords(f, qf));
    if (!retract(f, bp) || !retract(f, bq))
        return TimedOut{0};  // an endpoint sits on the spine; nothing to walk on

    const double gp = block_norm(bp.u, f.d, 1, +1.0);
    const double gq = block_norm(bq.u, f.d, 1, +1.0);
    double dmin = std::numeric_limits<double>::infinity();
    for (int j = 1; j < n; ++j) dmin = std::min(dmin, std::abs(f.d[j]));
    // a conservative level keeping every waypoint well inside the box
    const double g_box = 0.15 * std::sqrt(dmin);
    const double g = std::min({gp, gq, g_box});

    const double construction_margin = 2 * params.margin;
    long iterations = 0;

    const FVec vp = to_weighted(bp.u, f.d, 1, +1.0);
    const FVec vq = to_weighted(bq.u, f.d, 1, +1.0);
    const FVec wp = to_weighted(bp.w, f.d, 1 + f.k, -1.0);
    const FVec wq = to_weighted(bq.w, f.d, 1 + f.k, -1.0);

    for (int retry = 0; retry < 64; ++retry) {
        SplitMix64 rng(substream_seed(params.seed, retry));

        // via points free the interpolation from antipodal degeneracy; after
        // the first failed attempt they also jitter the great circle
        auto make_via = [&](const FVec& a, const FVec& b, int dim) -> std::vector<FVec> {
            if (dim == 1) return {};  // fixed sign; no rotation available
            double cosw = 0;
            for (int i = 0; i < dim; ++i) cosw += a[i] * b[i];
            cosw /= (norm2(a) * norm2(b));
            if (retry == 0 && cosw > -0.999) return {};
            FVec dir(dim);
            for (auto& x : dir) x = rng.next_normal();
            // orthogonalize against a for a genuine detour
            double proj = 0, na = norm2(a);
            for (int i = 0; i < dim; ++i) proj += dir[i] * a[i];
            for (int i = 0; i < dim; ++i) dir[i] -= proj * a[i] / (na * na);
            const double nd = norm2(dir);
            if (nd < 1e-12) return {};
            FVec via(dim);
            for (int i = 0; i < dim; ++i) via[i] = dir[i] / nd * norm2(a);
            return {via};
        };

        std::vector<FVec> u_knots{vp};
        for (auto& v : make_via(vp, vq, f.k)) u_knots.push_back(v);
        u_knots.push_back(vq);
        std::vector<FVec> w_knots{wp};
        for (auto& v : make_via(wp, wq, f.l)) w_knots.push_back(v);
        w_knots.push_back(wq);

        // same-sign requirement for one-dimensional blocks
        if (f.k == 1 && vp[0] * vq[0] < 0) return TimedOut{iterations};
        if (f.l == 1 && wp[0] * wq[0] < 0) return TimedOut{iterations};

        // each block interpolates along its own knot chain; the chains can
        // have different lengths when only one side needed a via point
        auto eval_knots = [&](const std::vector<FVec>& knots, double t) {
            const int segs = static_cast<int>(knots.size()) - 1;
            const double tt = t * segs;
            const int seg = std::min(segs - 1, static_cast<int>(tt));
            return slerp(knots[seg], knots[seg + 1], tt - seg);
        };

        LegBuilder legs{f, params.step, {}};
        const FVec yp_full = join(f, bp), yq_full = join(f, bq);
        legs.waypoints.push_back(yp_full);
        legs.radial(yp_full, 1.0, g / gp);

        // enough interior samples that consecutive eigen-space jumps stay small
        const int core_steps = std::max(
            8, static_cast<int>(std::ceil((3.2 * g / std::sqrt(dmin) + 1.0) / params.step)));
        const double y0p = bp.y0 * g / gp, y0q = bq.y0 * g / gq;
        bool ok = true;
        std::vector<FVec> core;
        for (int i = 1; i <= core_steps && ok; ++i) {
            const double t = double(i) / core_steps;
            FVec vu = eval_knots(u_knots, t);
            FVec vw = eval_knots(w_knots, t);
            // scale both weighted radii to the common level g
            const double ru = norm2(vu), rw = norm2(vw);
            for (auto& x : vu) x *= g / ru;
            for (auto& x : vw) x *= g / rw;
            Blocks b;
            b.y0 = (1 - t) * y0p + t * y0q;
            b.u = from_weighted(vu, f.d, 1, +1.0);
            b.w = from_weighted(vw, f.d, 1 + f.k, -1.0);
            core.push_back(join(f, b));
        }

        // validate the candidate chain in probability coordinates
        std::vector<FVec> chain = legs.waypoints;
        chain.insert(chain.end(), core.begin(), core.end());
        {
            LegBuilder tail{f, params.step, {}};
            tail.radial(yq_full, g / gq, 1.0);
            chain.insert(chain.end(), tail.waypoints.begin(), tail.waypoints.end());
        }

        // frame round-trips can overshoot an exact 0/1 coordinate by an ulp
        auto snap_into_box = [](FVec v) {
            for (auto& x : v) {
                if (x < 0 && x > -1e-12) x = 0;
                if (x > 1 && x < 1 + 1e-12) x = 1;
            }
            return v;
        };
        std::vector<FVec> pts;
        pts.reserve(chain.size() + 2);
        pts.push_back(pf);
        for (const auto& y : chain) pts.push_back(snap_into_box(from_eigen_coords(f, y)));
        pts.push_back(qf);

        ok = true;
        for (const auto& w : pts) {
            ++iterations;
            if (iterations > params.budget) return TimedOut{iterations};
            if (!in_box(w) || influence_margin(w) < construction_margin ||
                std::abs(psi_at(w)) > params.psi_tol) {
                ok = false;
                break;
            }
        }
        if (!ok) continue;

        path.waypoints = std::move(pts);
        path.max_psi_drift = 0;
        path.min_influence_margin = std::numeric_limits<double>::infinity();
        for (const auto& w : path.waypoints) {
            path.max_psi_drift = std::max(path.max_psi_drift, std::abs(psi_at(w)));
            path.min_influence_margin = std::min(path.min_influence_margin, influence_margin(w));
        }
        return path;
    }
    return TimedOut{iterations};
}

}  // namespace gst::geometry
