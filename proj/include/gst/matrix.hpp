#pragma once

#include <vector>

#include "gst/rational.hpp"

namespace gst {

/// Minimal dense row-major matrix over an arbitrary field.
template <class T>
class Mat {
  public:
    Mat() : r_(0), c_(0) {}
    Mat(int rows, int cols, T fill = T(0)) : r_(rows), c_(cols), a_(std::size_t(rows) * cols, fill) {}

    static Mat identity(int n) {
        Mat m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    int rows() const { return r_; }
    int cols() const { return c_; }

    T& operator()(int i, int j) { return a_[std::size_t(i) * c_ + j]; }
    const T& operator()(int i, int j) const { return a_[std::size_t(i) * c_ + j]; }

    friend bool operator==(const Mat& a, const Mat& b) = default;

  private:
    int r_, c_;
    std::vector<T> a_;
};

using MatR = Mat<Rational>;
using MatZ = Mat<Integer>;
using MatF = Mat<double>;

template <class T>
std::vector<T> mat_vec(const Mat<T>& m, const std::vector<T>& v) {
    std::vector<T> out(m.rows(), T(0));
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) out[i] += m(i, j) * v[j];
    return out;
}

template <class T>
T dot(const std::vector<T>& a, const std::vector<T>& b) {
    T s(0);
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

/// Bareiss fraction-free elimination rank over the integers.
int rank_bareiss(MatZ m);

/// Exact rank of a rational matrix: clear denominators row by row, then Bareiss.
int rank_exact(const MatR& m);

/// L D L^T factorization of a symmetric matrix by the textbook recursion
///   D_j = A_jj - sum_{k<j} L_jk^2 D_k,
///   L_ij = (A_ij - sum_{k<j} L_ik L_jk D_k) / D_j.
/// Fails (ok = false, failed_at = j) when a pivot D_j vanishes, which happens
/// exactly when the j-th leading principal minor is zero.
struct LdlResult {
    bool ok = false;
    int failed_at = -1;
    std::vector<Rational> D;
    MatR L;
};
LdlResult ldl_decompose(const MatR& a);

}  // namespace gst
