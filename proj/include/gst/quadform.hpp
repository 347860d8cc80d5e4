#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <type_traits>
#include <vector>

#include "gst/matrix.hpp"
#include "gst/rational.hpp"
#include "gst/scalar.hpp"

namespace gst::quadform {

namespace detail {

template <class T>
T binom_as(long m, long k) {
    const Integer b = binom(m, k);
    if constexpr (std::is_same_v<T, Rational>) {
        return Rational(b);
    } else if constexpr (std::is_floating_point_v<T>) {
        return static_cast<T>(b.get_d());
    } else {
        if (!b.fits_slong_p()) throw NumericalError("binomial exceeds long range");
        return T(b.get_si());
    }
}

template <class T>
T inv_pow2(unsigned long e) {
    if constexpr (std::is_same_v<T, Rational>) {
        return dyadic(1, e);
    } else if constexpr (std::is_floating_point_v<T>) {
        return static_cast<T>(std::ldexp(1.0, -static_cast<int>(e)));
    } else {
        return T(1) / T(Rational(pow2(e)));
    }
}

}  // namespace detail

/// The quadratic form whose vanishing characterizes pairwise independence of
/// the effects in the fully symmetric game:
///   psi(p) = (2^{-(n-1)} sum_k C(n-1,k) p_{k+1})^2
///          - 2^{-(n-1)} sum_k C(n-2,k) (p_{k+2}^2 + p_{k+1} p_{n-k-1}).
/// Entries may lie outside [0,1]; psi is a polynomial and membership checks
/// enforce the box separately.
template <class T>
T psi(std::span<const T> p) {
    const long n = static_cast<long>(p.size());
    if (n < 2) throw InputError("psi needs n >= 2");
    const T invN = detail::inv_pow2<T>(n - 1);
    T s1(0);
    for (long k = 0; k <= n - 1; ++k) s1 += detail::binom_as<T>(n - 1, k) * p[k];
    s1 = s1 * invN;
    T s2(0);
    for (long k = 0; k <= n - 2; ++k)
        s2 += detail::binom_as<T>(n - 2, k) * (p[k + 1] * p[k + 1] + p[k] * p[n - k - 2]);
    return s1 * s1 - invN * s2;
}

template <class T>
T psi(const std::vector<T>& p) {
    return psi(std::span<const T>(p));
}

Scalar psi(const Vec& p);

/// Exact gradient of psi from the per-coordinate closed form; the boundary
/// coordinates i = 1 and i = n lose one term each (their binomial coefficient
/// vanishes). Identical to H_n p.
template <class T>
std::vector<T> psi_gradient(std::span<const T> p) {
    const long n = static_cast<long>(p.size());
    if (n < 2) throw InputError("psi_gradient needs n >= 2");
    const T invN = detail::inv_pow2<T>(n - 1);
    T s1(0);
    for (long k = 0; k <= n - 1; ++k) s1 += detail::binom_as<T>(n - 1, k) * p[k];
    std::vector<T> g(n, T(0));
    for (long i = 1; i <= n; ++i) {
        T v = T(2) * invN * invN * detail::binom_as<T>(n - 1, i - 1) * s1;
        if (i >= 2) v -= T(2) * invN * detail::binom_as<T>(n - 2, i - 2) * p[i - 1];
        if (i <= n - 1) v -= T(2) * invN * detail::binom_as<T>(n - 2, i - 1) * p[n - i - 1];
        g[i - 1] = v;
    }
    return g;
}

template <class T>
std::vector<T> psi_gradient(const std::vector<T>& p) {
    return psi_gradient(std::span<const T>(p));
}

Vec psi_gradient(const Vec& p);

/// The constant second-derivative matrix H_n of psi, its halved form Q_n
/// (psi(p) = p^T Q_n p), and the split H = vv^T - X where vv^T is the rational
/// rank-one part with entries (2/N^2) C(n-1,i-1) C(n-1,j-1). The vector v
/// itself has an irrational factor and is never materialized.
struct QuadInfo {
    int n = 0;
    MatR H, Q, X, vvT;
};

QuadInfo hessian(int n);

/// H restricted to the rank-one/X split only (cheaper when Q is not needed).
MatR hessian_matrix(int n);

struct Inertia {
    int pos = 0, neg = 0, zero = 0;
    friend bool operator==(const Inertia&, const Inertia&) = default;
};

/// Pivot trace of the factorization of the perturbed matrix A = H + eps B,
/// where B has ones on the main antidiagonal (i + j = n + 1).
struct LDLTrace {
    Rational epsilon;
    std::vector<Rational> D;
    MatR L;
    MatR A;
};

/// Picks an exact eps = 2^-j, j in {4, 8, 12, ...}, such that all n leading
/// principal minors of H + eps B are nonzero (each pivot of the LDL^T
/// recursion is then nonzero, which is equivalent). The minors are polynomials
/// in eps with finitely many roots, so the descent terminates.
Rational epsilon_select(int n);

/// Exact inertia of A = H + eps B via the pivot signs, together with the
/// trace. Verifies the closed forms for the leading pivots:
///   D_1 = 2/N^2,
///   D_i = -(2/N) C(n-2, i-2)            for 2 <= i <= floor(n/2), i != n/2,
///   D_{n/2} = -(2/N) C(n-1, n/2-1)      for even n (the antidiagonal of X
///                                        meets the diagonal there),
/// and the mid pivot D_{floor(n/2)+1}:
///   odd n >= 5:  (2/N) C(n-2, floor(n/2)) (2/(floor(n/2)-1)) + eps,
///   even n >= 6: (2/N) C(n-2, n/2-1) (n-1)/((n/2)(n/2-2))
///                + eps^2 N / (2 C(n-1, n/2-1)).
std::pair<Inertia, LDLTrace> inertia_ldl(int n);
std::pair<Inertia, LDLTrace> inertia_ldl(int n, const Rational& eps);

/// Closed form for the mid pivot D_{floor(n/2)+1} (odd n >= 5, even n >= 6).
Rational mid_pivot_closed_form(int n, const Rational& eps);

struct EigenSym {
    FVec values;   // sorted descending
    MatF vectors;  // column j pairs with values[j]; orthonormal
};

/// Full spectral decomposition of a symmetric matrix by cyclic Jacobi
/// rotations. Stops when the off-diagonal Frobenius norm falls below tol;
/// throws after a bounded number of sweeps.
EigenSym eigen_sym(const MatF& m, double tol);

/// Inertia of H itself: the kernel dimension comes from an exact rank
/// computation; the positive/negative split from the perturbed pivots,
/// stabilized across two epsilon halvings and required to agree with the
/// float eigensolver counts. Disagreement is an error, never silently fixed.
Inertia inertia_of_H(int n);

/// Exact rank of the X part; fraction-free elimination on the integer scaling.
int rank_X(int n);

/// Exact rank of H_n.
int rank_H(int n);

/// Relative threshold for calling a float eigenvalue zero.
inline double zero_threshold(const MatF& m) {
    double mx = 0;
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) mx = std::max(mx, std::abs(m(i, j)));
    return 1e-10 * (mx > 0 ? mx : 1.0);
}

MatF to_float(const MatR& m);

}  // namespace gst::quadform
