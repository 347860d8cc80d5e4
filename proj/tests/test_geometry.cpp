#include <doctest.h>

#include <cmath>

#include "gst/geometry.hpp"
#include "gst/rng.hpp"
#include "helpers.hpp"

using namespace gst;
using namespace gst::geometry;

namespace {

FVec boundary_approx(int n) { return points::boundary_point(n).approx(); }

double margin_of(const FVec& p) {
    double m = 0;
    for (std::size_t s = 1; s <= p.size(); ++s)
        m = std::max(m, std::abs(p[s - 1] - p[p.size() - s]));
    return m;
}

}  // namespace

TEST_CASE("eigenframe signature follows the form") {
    struct Row {
        int n, k, l;
    };
    for (const Row r : {Row{3, 1, 1}, Row{4, 1, 2}, Row{5, 2, 2}, Row{8, 3, 4}, Row{10, 4, 5}}) {
        const EigenFrame f = eigen_frame(r.n);
        CHECK(f.k == r.k);
        CHECK(f.l == r.l);
        CHECK(f.k + f.l + 1 == r.n);
        CHECK(std::abs(f.d[0]) < 1e-10);
        for (int j = 1; j <= f.k; ++j) CHECK(f.d[j] > 0);
        for (int j = f.k + 1; j < r.n; ++j) CHECK(f.d[j] < 0);
        // first column is the normalized all-ones direction
        for (int i = 0; i < r.n; ++i)
            CHECK(std::abs(f.P(i, 0) - 1.0 / std::sqrt(double(r.n))) < 1e-9);
    }
    SUBCASE("round trip through eigen coordinates") {
        const EigenFrame f = eigen_frame(6);
        const FVec p{0.3, 0.6, 0.1, 0.8, 0.2, 0.5};
        const FVec back = from_eigen_coords(f, to_eigen_coords(f, p));
        for (int i = 0; i < 6; ++i) CHECK(p[i] == doctest::Approx(back[i]).epsilon(1e-12));
        // psi(p) equals the weighted square sum of the eigen coordinates
        const FVec y = to_eigen_coords(f, p);
        double acc = 0;
        for (int j = 0; j < 6; ++j) acc += f.d[j] * y[j] * y[j];
        CHECK(std::abs(acc - quadform::psi<double>(p)) < 1e-12);
    }
}

TEST_CASE("component labels") {
    const Vec tequila = Vec::exact(RVec{Rational(1), ratio(1, 2), ratio(1, 3)});
    SUBCASE("the mirror image lands in the other component") {
        const auto l1 = component_label(tequila);
        const auto l2 = component_label(points::involution(tequila));
        CHECK(l1.sign == -l2.sign);
    }
    SUBCASE("equivalent points with positive scale share a component") {
        const Vec other = Vec::exact(RVec{ratio(1, 3), ratio(1, 9), ratio(1, 27)});
        CHECK(component_label(tequila).sign == component_label(other).sign);
    }
    SUBCASE("n = 4 boundary pair carries opposite labels") {
        const auto bp = boundary_approx(4);
        FVec partner(4);
        for (int i = 0; i < 4; ++i) partner[i] = 1 - bp[i];
        CHECK(component_label(Vec::approx(bp)).sign ==
              -component_label(Vec::approx(partner)).sign);
    }
    SUBCASE("labels agree with a linear orientation functional on the n = 3 plane") {
        // on the solution plane, the first-vs-last coordinate gap changes sign
        // exactly across the constant line, so it splits the two components
        const EigenFrame f = eigen_frame(3);
        testutil::RationalSampler rs(61);
        int checked = 0;
        std::optional<int> expected_product;
        while (checked < 100) {
            const auto pool = testutil::exact_ind_points(3, 25, rs.raw(), true);
            for (const auto& p : pool) {
                FVec pf{to_double(p[0]), to_double(p[1]), to_double(p[2])};
                const int label = component_label(f, pf).sign;
                const int functional = (pf[0] - pf[2]) > 0 ? 1 : -1;
                if (!expected_product) expected_product = label * functional;
                CHECK(label * functional == *expected_product);
                ++checked;
            }
        }
    }
    SUBCASE("labels are constant along a fully-inside segment") {
        const Vec scaled = points::affine_point(tequila, Scalar(ratio(1, 2)), Scalar(Rational(0)));
        REQUIRE(segment_classify(tequila, scaled, 8).kind == SegmentKind::AllInGST);
        const int expect = component_label(tequila).sign;
        for (int i = 0; i <= 8; ++i) {
            const Rational t = ratio(i, 8);
            RVec w(3);
            for (int j = 0; j < 3; ++j)
                w[j] = t * tequila.rat()[j] + (1 - t) * scaled.rat()[j];
            CHECK(component_label(Vec::exact(w)).sign == expect);
        }
    }
    SUBCASE("defined only in the unique-sign regime") {
        CHECK_THROWS_AS(component_label(Vec::approx(boundary_approx(8))), InputError);
    }
    SUBCASE("requires a genuine solution point") {
        CHECK_THROWS_AS(component_label(Vec::approx({0.9, 0.9, 0.2})), InputError);
    }
}

TEST_CASE("contraction stays inside the solution set") {
    const Vec p = Vec::exact(RVec{Rational(1), ratio(1, 2), ratio(1, 3)});
    const Vec m = Vec::exact(RVec(3, ratio(1, 2)));
    CHECK(contraction(p, Scalar(Rational(0)), m).rat() == p.rat());
    CHECK(contraction(p, Scalar(Rational(1)), m).rat() == m.rat());
    const Vec half = contraction(p, Scalar(ratio(1, 2)), m);
    CHECK(quadform::psi<Rational>(half.rat()) == Rational(0));
    for (int i = 0; i <= 16; ++i) {
        const Vec w = contraction(p, Scalar(ratio(i, 16)), m);
        CHECK(quadform::psi<Rational>(w.rat()) == Rational(0));
    }
    SUBCASE("rejects non-constant targets") {
        const Vec bad = Vec::exact(RVec{ratio(1, 2), ratio(1, 2), ratio(1, 4)});
        CHECK_THROWS_AS(contraction(p, Scalar(ratio(1, 2)), bad), InputError);
    }
    SUBCASE("rejects points off the solution set") {
        const Vec bad = Vec::exact(RVec{Rational(1), ratio(1, 2), ratio(1, 4)});
        CHECK_THROWS_AS(contraction(bad, Scalar(ratio(1, 2)), m), InputError);
    }
}

TEST_CASE("segment classification reproduces the three regimes") {
    const Vec p = Vec::exact(RVec{Rational(1), ratio(1, 2), ratio(1, 3)});
    SUBCASE("scaling: the whole segment stays a solution with influence") {
        const Vec q = points::affine_point(p, Scalar(ratio(1, 2)), Scalar(Rational(0)));
        const auto rep = segment_classify(p, q, 16);
        CHECK(rep.kind == SegmentKind::AllInGST);
        CHECK(rep.ct.rat() == Rational(0));
        CHECK(rep.samples_checked == 16);
    }
    SUBCASE("mirror pair: exactly the midpoint loses influence") {
        const auto rep = segment_classify(p, points::involution(p), 16);
        CHECK(rep.kind == SegmentKind::AllInIndNotGST);
        REQUIRE(rep.failure_ts.size() == 1);
        CHECK(rep.failure_ts[0].rat() == ratio(1, 2));
        CHECK(rep.failure_points[0].rat() == RVec(3, ratio(1, 2)));
    }
    SUBCASE("power-family pair at n = 10: the interior leaves the solution set") {
        const auto roots = points::theta_roots(10, dyadic(1, 45));
        REQUIRE(roots.size() == 3);
        const Vec a = points::theta_point(10, Scalar(roots[0].mid()));
        const Vec b = points::theta_point(10, Scalar(roots[2].mid()));
        const auto rep = segment_classify(a, b, 8);
        CHECK(rep.kind == SegmentKind::InteriorOutsideInd);
        CHECK(std::abs(rep.ct.flt()) > 1e-6);
    }
    SUBCASE("exact mirror regime in dimension five") {
        RVec bp(5, Rational(0));
        bp[0] = 1;
        bp[4] = ratio(1, 3);
        const Vec vb = Vec::exact(bp);
        const auto rep = segment_classify(vb, points::involution(vb), 8);
        CHECK(rep.kind == SegmentKind::AllInIndNotGST);
        CHECK(rep.failure_ts[0].rat() == ratio(1, 2));
    }
    SUBCASE("endpoints must belong to the intersection") {
        CHECK_THROWS_AS(segment_classify(p, Vec::exact(RVec(3, ratio(1, 2))), 4), InputError);
    }
}

TEST_CASE("surface sampler") {
    SUBCASE("pinned run: high acceptance, every point verified") {
        long attempts = 0;
        const auto pts = surface_sample(8, 100, 0.05, 42, {}, &attempts);
        CHECK(pts.size() == 100);
        CHECK(double(pts.size()) / double(attempts) >= 0.5);
        for (const auto& p : pts) {
            CHECK(std::abs(quadform::psi<double>(p)) <= 1e-9);
            CHECK(margin_of(p) > 0);
            for (double x : p) {
                CHECK(x >= 0.0);
                CHECK(x <= 1.0);
            }
            const auto rep = points::membership(Vec::approx(p), {1e-9, 1e-10});
            CHECK(rep.in_gst);
        }
    }
    SUBCASE("determinism") {
        const auto a = surface_sample(6, 10, 0.04, 7);
        const auto b = surface_sample(6, 10, 0.04, 7);
        CHECK(a == b);
    }
    SUBCASE("the midpoint itself never passes") {
        const auto rep = points::membership(Vec::approx(FVec(8, 0.5)));
        CHECK_FALSE(rep.in_inf);
    }
    SUBCASE("oversized radius fails loudly") {
        CHECK_THROWS_AS(surface_sample(6, 10, 30.0, 1), NumericalError);
    }
}

TEST_CASE("path probe") {
    SUBCASE("identical endpoints give the one-point path") {
        const FVec p = boundary_approx(8);
        const auto res = path_probe(Vec::approx(p), Vec::approx(p), {});
        const auto* path = std::get_if<SurfacePath>(&res);
        REQUIRE(path != nullptr);
        CHECK(path->waypoints.size() == 1);
    }
    SUBCASE("n = 3 mirror pair is certified disconnected") {
        const Vec p = Vec::exact(RVec{Rational(1), ratio(1, 2), ratio(1, 3)});
        const auto res = path_probe(p, points::involution(p), {});
        const auto* cert = std::get_if<DisconnectionCertificate>(&res);
        REQUIRE(cert != nullptr);
        CHECK(cert->label_p == -cert->label_q);
    }
    SUBCASE("n = 4 mirror pair is certified disconnected") {
        const FVec p = boundary_approx(4);
        FVec q(4);
        for (int i = 0; i < 4; ++i) q[i] = 1 - p[i];
        const auto res = path_probe(Vec::approx(p), Vec::approx(q), {});
        CHECK(std::get_if<DisconnectionCertificate>(&res) != nullptr);
    }
    SUBCASE("n = 8 boundary pair is connected; every waypoint re-verifies") {
        const FVec p = boundary_approx(8);
        FVec q(8);
        for (int i = 0; i < 8; ++i) q[i] = 1 - p[i];
        PathParams params;
        params.seed = 11;
        const auto res = path_probe(Vec::approx(p), Vec::approx(q), params);
        const auto* path = std::get_if<SurfacePath>(&res);
        REQUIRE(path != nullptr);
        CHECK(path->max_psi_drift <= 1e-6);
        CHECK(path->min_influence_margin >= 1e-6);
        CHECK_FALSE(path->experimental);
        points::Tolerances tol;
        tol.psi_tol = 1e-6;
        tol.influence_margin = 1e-6;
        for (const auto& w : path->waypoints) {
            const auto rep = points::membership(Vec::approx(w), tol);
            CHECK(rep.in_gst);
        }
        CHECK(path->waypoints.front() == p);
        CHECK(path->waypoints.back() == q);
        // consecutive waypoints keep within the configured spacing
        for (std::size_t i = 1; i < path->waypoints.size(); ++i) {
            double d2 = 0;
            for (int c = 0; c < 8; ++c) {
                const double d = path->waypoints[i][c] - path->waypoints[i - 1][c];
                d2 += d * d;
            }
            CHECK(std::sqrt(d2) <= 2 * params.step);
        }
    }
    SUBCASE("same-label pairs in the disconnected regime still connect") {
        const Vec p = Vec::exact(RVec{Rational(1), ratio(1, 2), ratio(1, 3)});
        const Vec q = Vec::exact(RVec{ratio(1, 3), ratio(1, 9), ratio(1, 27)});
        const auto res = path_probe(p, q, {});
        const auto* path = std::get_if<SurfacePath>(&res);
        REQUIRE(path != nullptr);
        CHECK(path->max_psi_drift <= 1e-6);
        CHECK(path->min_influence_margin >= 1e-6);
    }
    SUBCASE("the probe flags the open dimensions as experimental") {
        RVec bp(5, Rational(0));
        bp[0] = 1;
        bp[4] = ratio(1, 3);
        const Vec p = Vec::exact(bp);
        const Vec q = points::involution(p);
        const auto res = path_probe(p, q, {});
        if (const auto* path = std::get_if<SurfacePath>(&res)) CHECK(path->experimental);
    }
}
