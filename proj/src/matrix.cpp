#include "gst/matrix.hpp"

namespace gst {

int rank_bareiss(MatZ m) {
    const int rows = m.rows(), cols = m.cols();
    Integer prev(1);
    int rank = 0;
    for (int col = 0; col < cols && rank < rows; ++col) {
        int piv = -1;
        for (int i = rank; i < rows; ++i)
            if (m(i, col) != 0) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        if (piv != rank)
            for (int j = 0; j < cols; ++j) std::swap(m(piv, j), m(rank, j));
        for (int i = rank + 1; i < rows; ++i) {
            for (int j = col + 1; j < cols; ++j) {
                Integer t = m(rank, col) * m(i, j) - m(i, col) * m(rank, j);
                mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
                m(i, j) = t;
            }
            m(i, col) = 0;
        }
        prev = m(rank, col);
        ++rank;
    }
    return rank;
}

int rank_exact(const MatR& m) {
    MatZ z(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i) {
        Integer l(1);
        for (int j = 0; j < m.cols(); ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).get_den().get_mpz_t());
        for (int j = 0; j < m.cols(); ++j) {
            Rational scaled = m(i, j) * Rational(l);
            z(i, j) = scaled.get_num();  // denominator is 1 after scaling
        }
    }
    return rank_bareiss(z);
}

LdlResult ldl_decompose(const MatR& a) {
    const int n = a.rows();
    LdlResult res;
    res.D.assign(n, Rational(0));
    res.L = MatR::identity(n);
    for (int j = 0; j < n; ++j) {
        Rational d = a(j, j);
        for (int k = 0; k < j; ++k) d -= res.L(j, k) * res.L(j, k) * res.D[k];
        if (sgn(d) == 0) {
            res.failed_at = j;
            return res;
        }
        res.D[j] = d;
        for (int i = j + 1; i < n; ++i) {
            Rational s = a(i, j);
            for (int k = 0; k < j; ++k) s -= res.L(i, k) * res.L(j, k) * res.D[k];
            res.L(i, j) = s / d;
        }
    }
    res.ok = true;
    return res;
}

}  // namespace gst
