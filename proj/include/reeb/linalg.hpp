#ifndef REEB_LINALG_HPP
#define REEB_LINALG_HPP

#include <optional>
#include <type_traits>
#include <vector>

#include "reeb/rational.hpp"

namespace reeb {

template <typename Scalar>
inline constexpr bool is_exact_v = std::is_same_v<Scalar, Rational>;

namespace detail {

template <typename Scalar>
Scalar magnitude(const Scalar& x) {
  return x < Scalar(0) ? Scalar(-x) : x;
}

/** Reduces m in place to reduced row echelon form; returns the pivot columns. */
template <typename Scalar>
std::vector<Eigen::Index> reduce_rows(Matrix<Scalar>& m, double tol = 1e-12) {
  std::vector<Eigen::Index> pivots;
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < m.cols() && row < m.rows(); ++col) {
    Eigen::Index best = -1;
    if constexpr (is_exact_v<Scalar>) {
      for (Eigen::Index r = row; r < m.rows(); ++r)
        if (m(r, col) != 0) { best = r; break; }
    } else {
      Scalar bestval(tol);
      for (Eigen::Index r = row; r < m.rows(); ++r)
        if (magnitude(m(r, col)) > bestval) { bestval = magnitude(m(r, col)); best = r; }
    }
    if (best < 0) continue;
    m.row(row).swap(m.row(best));
    Scalar p = m(row, col);
    for (Eigen::Index c = col; c < m.cols(); ++c) m(row, c) /= p;
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      if (r == row || m(r, col) == Scalar(0)) continue;
      Scalar f = m(r, col);
      for (Eigen::Index c = col; c < m.cols(); ++c) m(r, c) -= f * m(row, c);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace detail

/** Determinant by Gaussian elimination (exact for Rational). */
template <typename Scalar>
Scalar determinant(Matrix<Scalar> m) {
  const Eigen::Index n = m.rows();
  Scalar det(1);
  for (Eigen::Index col = 0; col < n; ++col) {
    Eigen::Index best = -1;
    if constexpr (is_exact_v<Scalar>) {
      for (Eigen::Index r = col; r < n; ++r)
        if (m(r, col) != 0) { best = r; break; }
    } else {
      Scalar bestval(0);
      for (Eigen::Index r = col; r < n; ++r)
        if (detail::magnitude(m(r, col)) > bestval) { bestval = detail::magnitude(m(r, col)); best = r; }
    }
    if (best < 0) return Scalar(0);
    if (best != col) { m.row(col).swap(m.row(best)); det = -det; }
    det *= m(col, col);
    for (Eigen::Index r = col + 1; r < n; ++r) {
      if (m(r, col) == Scalar(0)) continue;
      Scalar f = m(r, col) / m(col, col);
      for (Eigen::Index c = col; c < n; ++c) m(r, c) -= f * m(col, c);
    }
  }
  return det;
}

/** Fraction-free (Bareiss) determinant of an integer matrix. */
Integer determinant(MatrixZ m);

template <typename Scalar>
Eigen::Index rank(Matrix<Scalar> m) {
  return static_cast<Eigen::Index>(detail::reduce_rows(m).size());
}

/** Basis of the right nullspace {x : m x = 0}, one column per free variable. */
template <typename Scalar>
Matrix<Scalar> nullspace(Matrix<Scalar> m) {
  auto pivots = detail::reduce_rows(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  Matrix<Scalar> basis(m.cols(), m.cols() - static_cast<Eigen::Index>(pivots.size()));
  basis.setZero();
  Eigen::Index k = 0;
  for (Eigen::Index free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    basis(free, k) = Scalar(1);
    for (std::size_t i = 0; i < pivots.size(); ++i) basis(pivots[i], k) = -m(i, free);
    ++k;
  }
  return basis;
}

/** Solves a x = b; empty if inconsistent. Free variables are set to zero. */
template <typename Scalar>
std::optional<Vector<Scalar>> solve(const Matrix<Scalar>& a, const Vector<Scalar>& b) {
  Matrix<Scalar> aug(a.rows(), a.cols() + 1);
  aug.leftCols(a.cols()) = a;
  aug.col(a.cols()) = b;
  auto pivots = detail::reduce_rows(aug);
  if (!pivots.empty() && pivots.back() == a.cols()) return std::nullopt;
  Vector<Scalar> x = Vector<Scalar>::Zero(a.cols());
  for (std::size_t i = 0; i < pivots.size(); ++i) x(pivots[i]) = aug(i, a.cols());
  return x;
}

template <typename Scalar>
Matrix<Scalar> inverse(const Matrix<Scalar>& a) {
  Matrix<Scalar> aug(a.rows(), 2 * a.cols());
  aug.leftCols(a.cols()) = a;
  aug.rightCols(a.cols()).setIdentity();
  detail::reduce_rows(aug);
  return aug.rightCols(a.cols());
}

/**
 * Lattice basis of {x in Z^d : a x = 0} as columns, via unimodular column reduction
 * (a U = [H | 0]; the trailing columns of U span the kernel lattice).
 */
MatrixZ integer_kernel(const MatrixZ& a);

/**
 * Coordinates of the columns of w in the lattice basis b (b has full column rank and
 * the columns of w lie in its real span). Throws if some column is outside the span.
 */
MatrixQ coordinates_in(const MatrixZ& basis, const MatrixZ& w);

}  // namespace reeb

#endif
