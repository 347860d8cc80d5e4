#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "gst/points.hpp"
#include "gst/quadform.hpp"
#include "gst/scalar.hpp"

namespace gst::geometry {

/// Orthogonal eigenframe of Q_n with eigenvalues reordered as
/// (0, positives descending, negatives descending). Column 0 of P is the
/// normalized all-ones kernel direction.
struct EigenFrame {
    int n = 0;
    int k = 0;  // strictly positive eigenvalues
    int l = 0;  // strictly negative eigenvalues
    MatF P;     // columns follow the reordered spectrum
    FVec d;     // reordered eigenvalues, d[0] ~ 0
};

EigenFrame eigen_frame(int n);

/// Eigen-coordinates of a point relative to the cube midpoint:
/// y = P^T (p - m). psi(p) equals y^T diag(d) y up to solver tolerance.
FVec to_eigen_coords(const EigenFrame& f, const FVec& p);
FVec from_eigen_coords(const EigenFrame& f, const FVec& y);

/// Connected-component certificate, defined only when min(k, l) = 1: the sign
/// of the eigencoordinate paired with the unique-sign eigenvalue. That
/// coordinate vanishes only on the constant-vector spine, which has no
/// influence, so the sign is constant on each component.
struct ComponentLabel {
    int sign = 0;  // +1 or -1
};

ComponentLabel component_label(const Vec& p, const points::Tolerances& tol = {});
ComponentLabel component_label(const EigenFrame& f, const FVec& p, const points::Tolerances& tol = {});

/// Straight-line homotopy (1-t) p + t x toward a constant vector x; stays in
/// the independence set for every t. Errors when x is not constant.
Vec contraction(const Vec& p, const Scalar& t, const Vec& x);

enum class SegmentKind { AllInGST, AllInIndNotGST, InteriorOutsideInd, Mixed };

struct SegmentReport {
    SegmentKind kind = SegmentKind::Mixed;
    Scalar ct;                        // cross term of the endpoints
    std::vector<Scalar> failure_ts;   // influence failures along the segment
    std::vector<Vec> failure_points;
    int samples_checked = 0;
    std::string note;
};

/// Classifies the segment between two points of GST_n. The interior lies in
/// the independence set iff the cross term vanishes; when it does, influence
/// can only fail where every coordinate equals its mirror, a finite set of
/// parameters solved exactly (or with float tolerances in float mode).
SegmentReport segment_classify(const Vec& p, const Vec& q, int samples,
                               const points::Tolerances& tol = {});

/// Seeded sampler of the solution surface near the midpoint: draws the kernel
/// coordinate uniformly, picks random directions in the positive and negative
/// eigenblocks, equalizes their weighted norms at a random level, and maps
/// back through the frame. Rejects points that leave the box or lose
/// influence. Every accepted point has |psi| <= 1e-9.
std::vector<FVec> surface_sample(int n, int count, double radius, std::uint64_t seed,
                                 const points::Tolerances& tol = {},
                                 long* attempts_out = nullptr);

struct PathParams {
    std::uint64_t seed = 11;
    double step = 0.01;        // max jump between consecutive waypoints (eigen coords)
    long budget = 100000;      // iteration budget across retries
    double psi_tol = 1e-6;     // max |psi| allowed on the path
    double margin = 1e-6;      // min influence margin allowed on the path
};

struct SurfacePath {
    std::vector<FVec> waypoints;
    double max_psi_drift = 0;
    double min_influence_margin = 0;
    std::uint64_t seed = 0;
    bool experimental = false;  // set for n in {5,6,7}: connectivity is open
};

struct DisconnectionCertificate {
    int label_p = 0, label_q = 0;
    std::string reason;
};

struct TimedOut {
    long iterations = 0;
};

using PathResult = std::variant<SurfacePath, DisconnectionCertificate, TimedOut>;

/// Tries to connect two points of GST_n on the solution surface.
/// When min(k, l) = 1 and the component labels differ, returns the
/// disconnection certificate. Otherwise both endpoints are first scaled
/// toward the midpoint (exactly preserving membership), then a seeded
/// waypoint search runs on the quadric {y^T D y = 0} in eigen-coordinates,
/// with retraction (positive and negative block norms rescaled to their
/// geometric mean) and rejection of waypoints that lose influence margin.
/// TimedOut is an honest outcome, not an error.
PathResult path_probe(const Vec& p, const Vec& q, const PathParams& params = {});

}  // namespace gst::geometry
