#include "reeb/linalg.hpp"

#include <stdexcept>

namespace reeb {

Integer determinant(MatrixZ m) {
  const Eigen::Index n = m.rows();
  if (n == 0) return 1;
  Integer sign = 1, prev = 1;
  for (Eigen::Index k = 0; k < n - 1; ++k) {
    if (m(k, k) == 0) {
      Eigen::Index r = k + 1;
      while (r < n && m(r, k) == 0) ++r;
      if (r == n) return 0;
      m.row(k).swap(m.row(r));
      sign = -sign;
    }
    for (Eigen::Index i = k + 1; i < n; ++i)
      for (Eigen::Index j = k + 1; j < n; ++j) m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

MatrixZ integer_kernel(const MatrixZ& a) {
  const Eigen::Index rows = a.rows(), d = a.cols();
  MatrixZ m = a;
  MatrixZ u = MatrixZ::Identity(d, d);
  Eigen::Index pivot = 0;
  for (Eigen::Index r = 0; r < rows && pivot < d; ++r) {
    // Euclid on the columns pivot..d-1 of row r until a single nonzero entry remains.
    for (;;) {
      Eigen::Index best = -1;
      for (Eigen::Index c = pivot; c < d; ++c)
        if (m(r, c) != 0 && (best < 0 || abs(m(r, c)) < abs(m(r, best)))) best = c;
      if (best < 0) break;
      bool done = true;
      for (Eigen::Index c = pivot; c < d; ++c) {
        if (c == best || m(r, c) == 0) continue;
        Integer q = m(r, c) / m(r, best);
        m.col(c) -= q * m.col(best);
        u.col(c) -= q * u.col(best);
        if (m(r, c) != 0) done = false;
      }
      if (done) {
        m.col(pivot).swap(m.col(best));
        u.col(pivot).swap(u.col(best));
        ++pivot;
        break;
      }
    }
  }
  return u.rightCols(d - pivot);
}

MatrixQ coordinates_in(const MatrixZ& basis, const MatrixZ& w) {
  MatrixQ b = to_rational(basis);
  MatrixQ out(basis.cols(), w.cols());
  for (Eigen::Index j = 0; j < w.cols(); ++j) {
    auto x = solve<Rational>(b, to_rational(VectorZ(w.col(j))));
    if (!x) throw std::invalid_argument("vector outside the lattice span");
    out.col(j) = *x;
  }
  return out;
}

}  // namespace reeb
