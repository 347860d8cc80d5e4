#include "helpers.hpp"

#include <stdexcept>

namespace testutil {

namespace {

// second intersection of the line p0 + t d with the solution quadric
std::optional<RVec> chord(const RVec& p0, const RVec& d) {
    const Rational denom = gst::quadform::psi<Rational>(d);
    if (sgn(denom) == 0) return std::nullopt;
    const Rational num = gst::points::cross_term<Rational>(p0, d);
    const Rational t = -num / denom;
    if (sgn(t) == 0) return std::nullopt;
    RVec q(p0.size());
    for (std::size_t i = 0; i < p0.size(); ++i) q[i] = p0[i] + t * d[i];
    return q;
}

// affine map into the middle of the box; keeps psi = 0
std::optional<RVec> into_box(const RVec& q) {
    Rational lo = q[0], hi = q[0];
    for (const auto& v : q) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    if (lo == hi) return std::nullopt;
    const Rational x = gst::ratio(7, 8) / (hi - lo);
    const Rational y = -lo * x + gst::ratio(1, 16);
    RVec out(q.size());
    for (std::size_t i = 0; i < q.size(); ++i) out[i] = x * q[i] + y;
    return out;
}

RVec anchor_for(int n, RationalSampler& rs) {
    if (n == 5 || n == 7 || n == 9) {
        // alternating two-value points solve the form for odd n
        const Rational a = rs.in_unit(), b = rs.in_unit();
        RVec p(n);
        for (int i = 0; i < n; ++i) p[i] = (i % 2 == 0) ? a : b;
        return p;
    }
    if (n == 6) {
        // fixed integer solution of the n = 6 form
        RVec p = {Rational(-3), Rational(-7), Rational(-8), Rational(-9), Rational(-9),
                  Rational(-11)};
        if (sgn(gst::quadform::psi<Rational>(p)) != 0)
            throw std::logic_error("n = 6 anchor is expected to solve the form");
        return p;
    }
    throw std::invalid_argument("no exact anchor for this n");
}

}  // namespace

std::vector<RVec> exact_ind_points(int n, int count, std::uint64_t seed, bool require_influence) {
    RationalSampler rs(seed);
    std::vector<RVec> out;
    long guard = 0;
    while (static_cast<int>(out.size()) < count) {
        if (++guard > 200L * count) throw std::runtime_error("point pool generation stalled");
        if (n == 3) {
            const Rational b = rs.in_unit(), c = rs.in_unit();
            const Rational a = 4 * b - 3 * c;
            if (a < 0 || a > 1) continue;
            RVec p{a, b, c};
            if (require_influence && !has_influence(p)) continue;
            out.push_back(std::move(p));
            continue;
        }
        RVec p0 = anchor_for(n, rs);
        RVec d(n);
        for (auto& v : d) v = rs.signed_small();
        auto q = chord(p0, d);
        if (!q) continue;
        auto boxed = into_box(*q);
        if (!boxed) continue;
        if (sgn(gst::quadform::psi<Rational>(*boxed)) != 0)
            throw std::logic_error("chord construction left the quadric");
        if (require_influence && !has_influence(*boxed)) continue;
        out.push_back(std::move(*boxed));
    }
    return out;
}

gst::FVec psi_gradient_fd(const gst::FVec& p, double h) {
    gst::FVec g(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
        gst::FVec hi = p, lo = p;
        hi[i] += h;
        lo[i] -= h;
        g[i] = (gst::quadform::psi<double>(hi) - gst::quadform::psi<double>(lo)) / (2 * h);
    }
    return g;
}

}  // namespace testutil
