#include "reeb/quadrature.hpp"

#include <cmath>
#include <numbers>

namespace reeb {

GaussLegendre<long double> gauss_legendre_ld(int m) {
  if (m < 1) throw DomainError("quadrature needs at least one node");
  GaussLegendre<long double> out;
  out.nodes.resize(m);
  out.weights.resize(m);
  for (int i = 0; i < m; ++i) {
    long double x = std::cos(std::numbers::pi_v<long double> * (i + 0.75L) / (m + 0.5L));
    long double dp = 0;
    for (int iter = 0; iter < 100; ++iter) {
      long double p0 = 1, p1 = x;
      for (int k = 2; k <= m; ++k) {
        long double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (m == 1) p0 = 1;
      dp = m * (x * p1 - p0) / (x * x - 1);
      long double dx = p1 / dp;
      x -= dx;
      if (std::fabs(dx) < 1e-19L) break;
    }
    {
      long double p0 = 1, p1 = x;
      for (int k = 2; k <= m; ++k) {
        long double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = m * (x * p1 - p0) / (x * x - 1);
    }
    out.nodes[m - 1 - i] = (1 + x) / 2;
    out.weights[m - 1 - i] = 1 / ((1 - x * x) * dp * dp);
  }
  return out;
}

template <typename Scalar>
QuadratureRule<Scalar> simplex_rule(const Matrix<Scalar>& v, int m) {
  const Eigen::Index n = v.rows();
  auto gl = gauss_legendre<Scalar>(m);
  Eigen::Index total = 1;
  for (Eigen::Index i = 0; i < n; ++i) total *= m;
  QuadratureRule<Scalar> rule;
  rule.nodes.resize(n, total);
  rule.weights.resize(total);
  Matrix<Scalar> edges(n, n);
  for (Eigen::Index j = 0; j < n; ++j) edges.col(j) = v.col(j + 1) - v.col(0);
  Scalar jac = edges.determinant();
  if (jac < 0) jac = -jac;
  std::vector<int> idx(n, 0);
  for (Eigen::Index k = 0; k < total; ++k) {
    // Collapsed coordinates: lambda_j = u_j prod_{i<j} (1 - u_i).
    Vector<Scalar> lambda(n);
    Scalar rest = 1, w = jac;
    for (Eigen::Index j = 0; j < n; ++j) {
      Scalar u = gl.nodes[idx[j]];
      lambda(j) = rest * u;
      w *= gl.weights[idx[j]] * (j + 1 < n ? std::pow(1 - u, static_cast<int>(n - 1 - j)) : Scalar(1));
      rest *= 1 - u;
    }
    rule.nodes.col(k) = v.col(0) + edges * lambda;
    rule.weights(k) = w;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (++idx[j] < m) break;
      idx[j] = 0;
    }
  }
  return rule;
}

namespace {

template <typename Scalar>
QuadratureRule<Scalar> concatenate(const std::vector<QuadratureRule<Scalar>>& parts, Eigen::Index n) {
  Eigen::Index total = 0;
  for (const auto& p : parts) total += p.size();
  QuadratureRule<Scalar> out;
  out.nodes.resize(n, total);
  out.weights.resize(total);
  Eigen::Index at = 0;
  for (const auto& p : parts) {
    out.nodes.middleCols(at, p.size()) = p.nodes;
    out.weights.segment(at, p.size()) = p.weights;
    at += p.size();
  }
  return out;
}

template <typename Scalar>
Matrix<Scalar> vertex_matrix(const RationalPolytope& p, const IndexSet& s) {
  Matrix<Scalar> v(p.dimension(), static_cast<Eigen::Index>(s.size()));
  for (std::size_t j = 0; j < s.size(); ++j) v.col(j) = scalar_cast<Scalar>(p.vertices()[s[j]]);
  return v;
}

}  // namespace

template <typename Scalar>
QuadratureRule<Scalar> polytope_rule(const RationalPolytope& p, int m) {
  const int n = p.dimension();
  std::vector<Rational> sides;
  if (p.is_origin_box(&sides)) {
    auto gl = gauss_legendre<Scalar>(m);
    Eigen::Index total = 1;
    for (int i = 0; i < n; ++i) total *= m;
    QuadratureRule<Scalar> rule;
    rule.nodes.resize(n, total);
    rule.weights.resize(total);
    std::vector<int> idx(n, 0);
    for (Eigen::Index k = 0; k < total; ++k) {
      Scalar w = 1;
      for (int j = 0; j < n; ++j) {
        Scalar a = scalar_cast<Scalar>(sides[j]);
        rule.nodes(j, k) = a * gl.nodes[idx[j]];
        w *= a * gl.weights[idx[j]];
      }
      rule.weights(k) = w;
      for (int j = 0; j < n; ++j) {
        if (++idx[j] < m) break;
        idx[j] = 0;
      }
    }
    return rule;
  }
  std::vector<QuadratureRule<Scalar>> parts;
  // Cone each simplex from its barycenter and collapse the Duffy map there, so nodes cluster
  // in the interior instead of at vertices of P where the metric data is ill-conditioned.
  for (const auto& s : p.simplices()) {
    Matrix<Scalar> v = vertex_matrix<Scalar>(p, s.vertices);
    Vector<Scalar> c = v.rowwise().sum() / Scalar(n + 1);
    for (int j = 0; j <= n; ++j) {
      Matrix<Scalar> sub(n, n + 1);
      sub.col(1) = c;
      for (int i = 0, col = 0; i <= n; ++i) {
        if (i == j) continue;
        sub.col(col) = v.col(i);
        col += col == 0 ? 2 : 1;
      }
      parts.push_back(simplex_rule<Scalar>(sub, m));
    }
  }
  return concatenate(parts, n);
}

template <typename Scalar>
QuadratureRule<Scalar> boundary_rule(const RationalPolytope& p, int m) {
  const int n = p.dimension();
  std::vector<QuadratureRule<Scalar>> parts;
  for (std::size_t k = 0; k < p.facets().size(); ++k) {
    for (const auto& s : p.facet_simplices(k)) {
      Matrix<Scalar> v = vertex_matrix<Scalar>(p, s.vertices);
      QuadratureRule<Scalar> r;
      if (n == 1) {
        r.nodes = v;
        r.weights = Vector<Scalar>::Ones(1);
      } else {
        // Parametrize the facet simplex by its first n-1 edges and rescale to the lattice measure.
        auto gl = gauss_legendre<Scalar>(m);
        const int dim = n - 1;
        Eigen::Index total = 1;
        for (int i = 0; i < dim; ++i) total *= m;
        r.nodes.resize(n, total);
        r.weights.resize(total);
        Matrix<Scalar> edges(n, dim);
        for (int j = 0; j < dim; ++j) edges.col(j) = v.col(j + 1) - v.col(0);
        Scalar measure = scalar_cast<Scalar>(s.measure) * scalar_cast<Scalar>(factorial(dim));
        std::vector<int> idx(dim, 0);
        for (Eigen::Index k2 = 0; k2 < total; ++k2) {
          Vector<Scalar> lambda(dim);
          Scalar rest = 1, w = measure;
          for (int j = 0; j < dim; ++j) {
            Scalar u = gl.nodes[idx[j]];
            lambda(j) = rest * u;
            w *= gl.weights[idx[j]] * (j + 1 < dim ? std::pow(1 - u, dim - 1 - j) : Scalar(1));
            rest *= 1 - u;
          }
          r.nodes.col(k2) = v.col(0) + edges * lambda;
          r.weights(k2) = w;
          for (int j = 0; j < dim; ++j) {
            if (++idx[j] < m) break;
            idx[j] = 0;
          }
        }
      }
      parts.push_back(r);
    }
  }
  return concatenate(parts, n);
}

template QuadratureRule<double> simplex_rule<double>(const Matrix<double>&, int);
template QuadratureRule<long double> simplex_rule<long double>(const Matrix<long double>&, int);
template QuadratureRule<double> polytope_rule<double>(const RationalPolytope&, int);
template QuadratureRule<long double> polytope_rule<long double>(const RationalPolytope&, int);
template QuadratureRule<double> boundary_rule<double>(const RationalPolytope&, int);
template QuadratureRule<long double> boundary_rule<long double>(const RationalPolytope&, int);

}  // namespace reeb
