#ifndef REEB_QUADRATURE_HPP
#define REEB_QUADRATURE_HPP

#include <vector>

#include "reeb/polyhedral.hpp"

namespace reeb {

/** Gauss–Legendre nodes and weights on [0, 1]. */
template <typename Scalar = double>
struct GaussLegendre {
  std::vector<Scalar> nodes;
  std::vector<Scalar> weights;
};

GaussLegendre<long double> gauss_legendre_ld(int m);

template <typename Scalar = double>
GaussLegendre<Scalar> gauss_legendre(int m) {
  auto ld = gauss_legendre_ld(m);
  GaussLegendre<Scalar> out;
  for (int i = 0; i < m; ++i) {
    out.nodes.push_back(static_cast<Scalar>(ld.nodes[i]));
    out.weights.push_back(static_cast<Scalar>(ld.weights[i]));
  }
  return out;
}

/** Nodes (one column per point) and weights of a quadrature rule on a polytope. */
template <typename Scalar = double>
struct QuadratureRule {
  Matrix<Scalar> nodes;
  Vector<Scalar> weights;
  Eigen::Index size() const { return weights.size(); }
};

/**
 * Tensor Gauss–Legendre on origin boxes. Otherwise each simplex of the triangulation is split into
 * cones from its barycenter, each with a Duffy-collapsed Gauss–Legendre rule. `m` is the number of
 * nodes per axis.
 */
template <typename Scalar = double>
QuadratureRule<Scalar> polytope_rule(const RationalPolytope& p, int m);

/** Rule on a single simplex given by its vertices (columns). */
template <typename Scalar = double>
QuadratureRule<Scalar> simplex_rule(const Matrix<Scalar>& vertices, int m);

/**
 * Rule on the boundary of P with the lattice-normalized measure dsigma: one rule per facet,
 * concatenated (n = 1: unit point masses at the endpoints).
 */
template <typename Scalar = double>
QuadratureRule<Scalar> boundary_rule(const RationalPolytope& p, int m);

}  // namespace reeb

#endif
