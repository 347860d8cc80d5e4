#include "gst/quadform.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace gst::quadform {

Scalar psi(const Vec& p) {
    if (p.is_exact()) return Scalar(psi<Rational>(p.rat()));
    return Scalar(psi<double>(p.flt()));
}

Vec psi_gradient(const Vec& p) {
    if (p.is_exact()) return Vec::exact(psi_gradient<Rational>(p.rat()));
    return Vec::approx(psi_gradient<double>(p.flt()));
}

QuadInfo hessian(int n) {
    if (n < 3) throw InputError("hessian needs n >= 3");
    QuadInfo info;
    info.n = n;
    const Integer N = pow2(n - 1);
    const Rational twoN2 = ratio(Integer(2), N * N);
    const Rational twoN = ratio(Integer(2), N);
    info.vvT = MatR(n, n);
    info.X = MatR(n, n);
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) info.vvT(i - 1, j - 1) = twoN2 * Rational(binom(n - 1, i - 1) * binom(n - 1, j - 1));
    for (int i = 2; i <= n; ++i) info.X(i - 1, i - 1) += twoN * Rational(binom(n - 2, i - 2));
    for (int i = 1; i <= n; ++i) {
        const int j = n - i;  // antidiagonal i + j = n
        if (j >= 1 && j <= n) info.X(i - 1, j - 1) += twoN * Rational(binom(n - 2, i - 1));
    }
    info.H = MatR(n, n);
    info.Q = MatR(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            info.H(i, j) = info.vvT(i, j) - info.X(i, j);
            info.Q(i, j) = info.H(i, j) / 2;
        }
    return info;
}

MatR hessian_matrix(int n) { return hessian(n).H; }

namespace {

MatR perturbed(const MatR& H, const Rational& eps) {
    const int n = H.rows();
    MatR A = H;
    for (int i = 1; i <= n; ++i) A(i - 1, n + 1 - i - 1) += eps;  // main antidiagonal i + j = n + 1
    return A;
}

void verify_pivot_closed_forms(int n, const Rational& eps, const std::vector<Rational>& D) {
    const Integer N = pow2(n - 1);
    const Rational twoN = ratio(Integer(2), N);
    if (D[0] != ratio(Integer(2), N * N)) throw NumericalError("leading pivot mismatch");
    const int half = n / 2;
    for (int i = 2; i <= half; ++i) {
        Rational expect = (n % 2 == 0 && i == half) ? -twoN * Rational(binom(n - 1, half - 1))
                                                    : -twoN * Rational(binom(n - 2, i - 2));
        if (D[i - 1] != expect) throw NumericalError("negative pivot block mismatch");
    }
    const bool have_mid_form = (n % 2 == 1 && n >= 5) || (n % 2 == 0 && n >= 6);
    if (have_mid_form) {
        if (D[half] != mid_pivot_closed_form(n, eps))
            throw NumericalError("mid pivot closed form mismatch");
        if (sgn(D[half]) <= 0) throw NumericalError("mid pivot not positive");
    }
}

}  // namespace

Rational mid_pivot_closed_form(int n, const Rational& eps) {
    const Integer N = pow2(n - 1);
    const int half = n / 2;
    if (n % 2 == 1) {
        if (n < 5) throw InputError("odd closed form needs n >= 5");
        return ratio(Integer(2), N) * Rational(binom(n - 2, half)) * ratio(2, half - 1) + eps;
    }
    if (n < 6) throw InputError("even closed form needs n >= 6");
    const Rational base = ratio(Integer(2), N) * Rational(binom(n - 2, half - 1)) *
                          ratio(Integer(n - 1), Integer(half) * Integer(half - 2));
    const Rational quad = eps * eps * Rational(N) / (2 * Rational(binom(n - 1, half - 1)));
    return base + quad;
}

Rational epsilon_select(int n) {
    if (n < 3) throw InputError("epsilon_select needs n >= 3");
    const MatR H = hessian_matrix(n);
    for (unsigned long j = 4; j <= 64; j += 4) {
        const Rational eps = dyadic(1, j);
        if (ldl_decompose(perturbed(H, eps)).ok) return eps;
    }
    throw NumericalError("no admissible epsilon found on the 2^-j ladder");
}

std::pair<Inertia, LDLTrace> inertia_ldl(int n) { return inertia_ldl(n, epsilon_select(n)); }

std::pair<Inertia, LDLTrace> inertia_ldl(int n, const Rational& eps) {
    if (n < 3) throw InputError("inertia_ldl needs n >= 3");
    if (sgn(eps) <= 0) throw InputError("epsilon must be positive");
    const MatR A = perturbed(hessian_matrix(n), eps);
    auto ldl = ldl_decompose(A);
    if (!ldl.ok) {
        // a leading principal minor vanished at this eps; retry further down the ladder
        for (unsigned long j = 4; j <= 64; j += 4) {
            const Rational retry = eps * dyadic(1, j);
            ldl = ldl_decompose(perturbed(hessian_matrix(n), retry));
            if (ldl.ok) return inertia_ldl(n, retry);
        }
        throw NumericalError("pivot vanished and retries exhausted");
    }
    verify_pivot_closed_forms(n, eps, ldl.D);
    Inertia in;
    for (const auto& d : ldl.D) (sgn(d) > 0 ? in.pos : in.neg)++;
    LDLTrace trace{eps, std::move(ldl.D), std::move(ldl.L), A};
    return {in, std::move(trace)};
}

MatF to_float(const MatR& m) {
    MatF f(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) f(i, j) = to_double(m(i, j));
    return f;
}

EigenSym eigen_sym(const MatF& m, double tol) {
    const int n = m.rows();
    if (n != m.cols()) throw InputError("eigen_sym needs a square matrix");
    if (!(tol > 0)) throw InputError("eigen_sym needs tol > 0");
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (std::abs(m(i, j) - m(j, i)) > 1e-12 * (1.0 + std::abs(m(i, j))))
                throw InputError("eigen_sym needs a symmetric matrix");

    MatF a = m;
    MatF v = MatF::identity(n);
    auto off = [&] {
        double s = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) s += 2 * a(i, j) * a(i, j);
        return std::sqrt(s);
    };
    constexpr int kMaxSweeps = 100;
    int sweep = 0;
    while (off() > tol) {
        if (++sweep > kMaxSweeps) throw NumericalError("Jacobi sweeps exhausted without convergence");
        for (int p = 0; p < n - 1; ++p)
            for (int q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) continue;
                const double theta = (a(q, q) - a(p, p)) / (2 * apq);
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (int k = 0; k < n; ++k) {
                    const double akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    const double apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
                for (int k = 0; k < n; ++k) {
                    const double vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
    }
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int i, int j) { return a(i, i) > a(j, j); });
    EigenSym out;
    out.values.resize(n);
    out.vectors = MatF(n, n);
    for (int j = 0; j < n; ++j) {
        const int src = order[j];
        out.values[j] = a(src, src);
        // deterministic sign: largest-magnitude component made positive
        int arg = 0;
        for (int i = 1; i < n; ++i)
            if (std::abs(v(i, src)) > std::abs(v(arg, src))) arg = i;
        const double flip = v(arg, src) < 0 ? -1.0 : 1.0;
        for (int i = 0; i < n; ++i) out.vectors(i, j) = flip * v(i, src);
    }
    return out;
}

Inertia inertia_of_H(int n) {
    if (n < 3) throw InputError("inertia_of_H needs n >= 3");
    const int zero = n - rank_H(n);
    if (zero != 1) throw NumericalError("kernel of H is expected to be one-dimensional");

    const Rational eps0 = epsilon_select(n);
    Inertia stable = inertia_ldl(n, eps0).first;
    for (int halving = 1; halving <= 2; ++halving) {
        const Inertia again = inertia_ldl(n, eps0 * dyadic(1, halving)).first;
        if (!(again == stable))
            throw NumericalError("perturbed inertia did not stabilize under epsilon halving");
    }

    const MatF Hf = to_float(hessian_matrix(n));
    const auto es = eigen_sym(Hf, 1e-13);
    const double thr = zero_threshold(Hf);
    Inertia fl;
    for (double ev : es.values) {
        if (ev > thr)
            fl.pos++;
        else if (ev < -thr)
            fl.neg++;
        else
            fl.zero++;
    }
    if (fl.zero != 1 || fl.pos + fl.neg != n - 1)
        throw NumericalError("float eigensolver count disagrees with the exact kernel dimension");
    // One perturbed pivot carries the kernel direction; the split must match
    // the eigensolver on the remaining n-1 eigenvalues.
    const bool drift_pos = (stable.pos == fl.pos + 1 && stable.neg == fl.neg);
    const bool drift_neg = (stable.pos == fl.pos && stable.neg == fl.neg + 1);
    if (!drift_pos && !drift_neg)
        throw NumericalError("perturbed pivot signs disagree with the eigensolver inertia");
    return Inertia{fl.pos, fl.neg, 1};
}

int rank_X(int n) {
    const QuadInfo info = hessian(n);
    return rank_exact(info.X);
}

int rank_H(int n) { return rank_exact(hessian_matrix(n)); }

}  // namespace gst::quadform
