#include "reeb/toric_kahler.hpp"

#include <algorithm>
#include <cmath>

namespace reeb {

PolarizedToricData polarized_from_polytope(const RationalPolytope& p) {
  PolytopeClass cls = is_delzant(p);
  if (cls == PolytopeClass::neither) throw DomainError("polytope is not simplicial");
  PolarizedToricData d{p, p.volume(), p.boundary_measure(), 0, cls};
  d.sbar = 2 * d.perim / d.vol;
  return d;
}

SymplecticPotential::SymplecticPotential(const RationalPolytope& p) : p_(p) {
  for (const auto& f : p.facets()) {
    Vector<double> v(p.dimension());
    Vector<long double> vl(p.dimension());
    for (int i = 0; i < p.dimension(); ++i) {
      v(i) = f.normal(i).convert_to<double>();
      vl(i) = f.normal(i).convert_to<long double>();
    }
    normals_.push_back(v);
    normals_ld_.push_back(vl);
  }
}

template <typename Scalar>
void SymplecticPotential::require_interior(const Vector<Scalar>& x) const {
  if (x.size() != p_.dimension()) throw DimensionError("point has the wrong dimension");
  if (!p_.is_interior<Scalar>(x)) throw DomainError("point is not in the interior of the polytope");
}

template <typename Scalar>
Scalar SymplecticPotential::potential(const Vector<Scalar>& x) const {
  require_interior(x);
  Scalar u = 0;
  for (std::size_t k = 0; k < p_.facets().size(); ++k) {
    Scalar l = p_.facet_value<Scalar>(k, x);
    u += l * std::log(l) / 2;
  }
  return u;
}

template <typename Scalar>
GuilleminPoint<Scalar> SymplecticPotential::at(const Vector<Scalar>& x, bool curvature) const {
  require_interior(x);
  const int n = p_.dimension();
  const std::size_t m = p_.facets().size();
  std::vector<Vector<Scalar>> v(m);
  std::vector<Scalar> l(m);
  for (std::size_t k = 0; k < m; ++k) {
    if constexpr (std::is_same_v<Scalar, long double>)
      v[k] = normals_ld_[k];
    else
      v[k] = normals_[k].template cast<Scalar>();
    l[k] = p_.facet_value<Scalar>(k, x);
  }
  GuilleminPoint<Scalar> out;
  out.G = Matrix<Scalar>::Zero(n, n);
  for (std::size_t k = 0; k < m; ++k) out.G += v[k] * v[k].transpose() / (2 * l[k]);
  out.H = out.G.inverse();
  std::vector<Matrix<Scalar>> Ga(n, Matrix<Scalar>::Zero(n, n));
  for (int a = 0; a < n; ++a)
    for (std::size_t k = 0; k < m; ++k) Ga[a] -= v[k] * v[k].transpose() * (v[k](a) / (2 * l[k] * l[k]));
  std::vector<Matrix<Scalar>> M(n);  // H G_a H = -dH/dx_a
  for (int a = 0; a < n; ++a) M[a] = out.H * Ga[a] * out.H;
  out.div_H = Vector<Scalar>::Zero(n);
  for (int a = 0; a < n; ++a) out.div_H -= M[a].row(a).transpose();
  if (curvature) {
    Scalar s = 0;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        Matrix<Scalar> Gab = Matrix<Scalar>::Zero(n, n);
        for (std::size_t k = 0; k < m; ++k) Gab += v[k] * v[k].transpose() * (v[k](a) * v[k](b) / (l[k] * l[k] * l[k]));
        Matrix<Scalar> d2 = M[a] * Ga[b] * out.H + M[b] * Ga[a] * out.H - out.H * Gab * out.H;
        s -= d2(a, b);
      }
    out.scalar_curvature = s;
  }
  return out;
}

template double SymplecticPotential::potential<double>(const Vector<double>&) const;
template long double SymplecticPotential::potential<long double>(const Vector<long double>&) const;
template GuilleminPoint<double> SymplecticPotential::at<double>(const Vector<double>&, bool) const;
template GuilleminPoint<long double> SymplecticPotential::at<long double>(const Vector<long double>&, bool) const;

double abreu_scalar(const RationalPolytope& p, const Vector<double>& x) {
  return SymplecticPotential(p).at<double>(x).scalar_curvature;
}

ToricGrid ToricGrid::build(const RationalPolytope& p, int nodes_per_axis) {
  ToricGrid g{p, polytope_rule<double>(p, nodes_per_axis), {}, {}, {}};
  SymplecticPotential u(p);
  const Eigen::Index q = g.rule.size();
  g.H.resize(q);
  g.div_H.resize(p.dimension(), q);
  g.S.resize(q);
  for (Eigen::Index k = 0; k < q; ++k) {
    // Nodes near vertices of collapsed simplices lose digits in double.
    auto pt = u.at<long double>(g.rule.nodes.col(k).cast<long double>());
    g.H[k] = pt.H.cast<double>();
    g.div_H.col(k) = pt.div_H.cast<double>();
    g.S(k) = static_cast<double>(pt.scalar_curvature);
  }
  return g;
}

PolynomialBasis::PolynomialBasis(const ToricGrid& grid, int degree) : n_(grid.n()), degree_(degree) {
  const auto& p = grid.polytope;
  lo_.resize(n_);
  hi_.resize(n_);
  for (int i = 0; i < n_; ++i) {
    double lo = to_double(p.vertices().front()(i)), hi = lo;
    for (const auto& v : p.vertices()) {
      lo = std::min(lo, to_double(v(i)));
      hi = std::max(hi, to_double(v(i)));
    }
    lo_(i) = lo;
    hi_(i) = hi;
  }
  // Exponent tuples of total degree <= degree, graded so the constant comes first.
  for (int total = 0; total <= degree; ++total) {
    std::vector<int> e(n_, 0);
    std::function<void(int, int)> fill = [&](int axis, int left) {
      if (axis == n_ - 1) {
        e[axis] = left;
        exponents_.push_back(e);
        return;
      }
      for (int k = left; k >= 0; --k) {
        e[axis] = k;
        fill(axis + 1, left - k);
      }
    };
    fill(0, total);
  }
  Matrix<double> raw_values;
  std::vector<Matrix<double>> raw_grads;
  raw(grid.rule.nodes, raw_values, &raw_grads, nullptr);
  Vector<double> sw = grid.rule.weights.cwiseSqrt();
  Matrix<double> weighted = sw.asDiagonal() * raw_values;
  Eigen::HouseholderQR<Matrix<double>> qr(weighted);
  Matrix<double> r = qr.matrixQR().topRows(weighted.cols()).triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < r.rows(); ++j)
    if (r(j, j) < 0) r.row(j) *= -1;
  transform_ = r.triangularView<Eigen::Upper>().solve(Matrix<double>::Identity(r.rows(), r.cols()));
  phi_ = raw_values * transform_;
  dphi_.resize(n_);
  for (int a = 0; a < n_; ++a) dphi_[a] = raw_grads[a] * transform_;
}

void PolynomialBasis::raw(const Matrix<double>& x, Matrix<double>& values, std::vector<Matrix<double>>* grads,
                          std::vector<Matrix<double>>* hessians) const {
  const Eigen::Index q = x.cols();
  const Eigen::Index nb = static_cast<Eigen::Index>(exponents_.size());
  // Legendre values and first two derivatives per axis (P'_{k+1} = P'_{k-1} + (2k+1) P_k).
  std::vector<Matrix<double>> leg(n_), dleg(n_), d2leg(n_);
  for (int a = 0; a < n_; ++a) {
    leg[a].resize(q, degree_ + 1);
    dleg[a].resize(q, degree_ + 1);
    d2leg[a].resize(q, degree_ + 1);
    double scale = 2.0 / (hi_(a) - lo_(a));
    for (Eigen::Index k = 0; k < q; ++k) {
      double y = (2 * x(a, k) - lo_(a) - hi_(a)) / (hi_(a) - lo_(a));
      leg[a](k, 0) = 1;
      dleg[a](k, 0) = 0;
      d2leg[a](k, 0) = 0;
      if (degree_ >= 1) {
        leg[a](k, 1) = y;
        dleg[a](k, 1) = 1;
        d2leg[a](k, 1) = 0;
      }
      for (int j = 1; j < degree_; ++j) {
        leg[a](k, j + 1) = ((2 * j + 1) * y * leg[a](k, j) - j * leg[a](k, j - 1)) / (j + 1);
        dleg[a](k, j + 1) = dleg[a](k, j - 1) + (2 * j + 1) * leg[a](k, j);
        d2leg[a](k, j + 1) = d2leg[a](k, j - 1) + (2 * j + 1) * dleg[a](k, j);
      }
      dleg[a].row(k) *= scale;
      d2leg[a].row(k) *= scale * scale;
    }
  }
  values.resize(q, nb);
  if (grads) grads->assign(n_, Matrix<double>(q, nb));
  if (hessians) hessians->assign(n_ * n_, Matrix<double>(q, nb));
  for (Eigen::Index b = 0; b < nb; ++b) {
    const auto& e = exponents_[b];
    for (Eigen::Index k = 0; k < q; ++k) {
      auto factor = [&](int c, int order) {
        return order == 0 ? leg[c](k, e[c]) : order == 1 ? dleg[c](k, e[c]) : d2leg[c](k, e[c]);
      };
      double v = 1;
      for (int a = 0; a < n_; ++a) v *= factor(a, 0);
      values(k, b) = v;
      if (grads) {
        for (int a = 0; a < n_; ++a) {
          double d = 1;
          for (int c = 0; c < n_; ++c) d *= factor(c, c == a ? 1 : 0);
          (*grads)[a](k, b) = d;
        }
      }
      if (hessians) {
        for (int a = 0; a < n_; ++a)
          for (int a2 = 0; a2 < n_; ++a2) {
            double d = 1;
            for (int c = 0; c < n_; ++c) d *= factor(c, (c == a) + (c == a2));
            (*hessians)[a * n_ + a2](k, b) = d;
          }
      }
    }
  }
}

void PolynomialBasis::evaluate(const Matrix<double>& x, Matrix<double>& values, std::vector<Matrix<double>>* gradients,
                               std::vector<Matrix<double>>* hessians) const {
  Matrix<double> rv;
  std::vector<Matrix<double>> rg, rh;
  raw(x, rv, gradients ? &rg : nullptr, hessians ? &rh : nullptr);
  values = rv * transform_;
  if (gradients) {
    gradients->resize(n_);
    for (int a = 0; a < n_; ++a) (*gradients)[a] = rg[a] * transform_;
  }
  if (hessians) {
    hessians->resize(rh.size());
    for (std::size_t a = 0; a < rh.size(); ++a) (*hessians)[a] = rh[a] * transform_;
  }
}

Matrix<double> PolynomialBasis::stiffness(const ToricGrid& grid) const {
  const Eigen::Index q = grid.rule.size();
  Matrix<double> k = Matrix<double>::Zero(size(), size());
  for (int a = 0; a < n_; ++a)
    for (int b = 0; b < n_; ++b) {
      Vector<double> w(q);
      for (Eigen::Index i = 0; i < q; ++i) w(i) = grid.rule.weights(i) * grid.H[i](a, b);
      k.noalias() += dphi_[a].transpose() * w.asDiagonal() * dphi_[b];
    }
  return (k + k.transpose()) / 2;
}

std::vector<Rational> box_spectrum(const std::vector<Rational>& sides, int count) {
  const int n = static_cast<int>(sides.size());
  std::vector<Rational> values;
  std::vector<int> j(n, 0);
  for (;;) {
    int a = 0;
    for (; a < n; ++a) {
      if (++j[a] <= count) break;
      j[a] = 0;
    }
    if (a == n) break;
    Rational lambda = 0;
    for (int i = 0; i < n; ++i) lambda += Rational(2 * j[i] * (j[i] + 1)) / sides[i];
    values.push_back(lambda);
  }
  std::sort(values.begin(), values.end());
  if (static_cast<int>(values.size()) > count) values.resize(count);
  return values;
}

RitzPairs ritz_pairs(const ToricGrid& grid, const PolynomialBasis& basis) {
  Matrix<double> k = basis.stiffness(grid);
  const Eigen::Index m = basis.size() - 1;
  Eigen::SelfAdjointEigenSolver<Matrix<double>> es(k.bottomRightCorner(m, m));
  RitzPairs out;
  out.values = es.eigenvalues();
  out.coefficients = Matrix<double>::Zero(basis.size(), m);
  out.coefficients.bottomRows(m) = es.eigenvectors();
  return out;
}

std::vector<double> invariant_spectrum(const RationalPolytope& p, int k, const SpectralOptions& options,
                                       std::vector<Rational>* exact) {
  if (is_delzant(p) != PolytopeClass::delzant) throw DomainError("polytope is not Delzant");
  std::vector<Rational> sides;
  if (p.is_origin_box(&sides)) {
    auto values = box_spectrum(sides, k);
    if (exact) *exact = values;
    std::vector<double> out;
    for (const auto& v : values) out.push_back(to_double(v));
    return out;
  }
  if (exact) exact->clear();
  ToricGrid grid = ToricGrid::build(p, options.nodes_per_axis);
  PolynomialBasis basis(grid, options.degree);
  auto pairs = ritz_pairs(grid, basis);
  std::vector<double> out;
  for (int i = 0; i < k && i < pairs.values.size(); ++i) out.push_back(pairs.values(i));
  return out;
}

Lambda1 invariant_lambda1(const RationalPolytope& p, const SpectralOptions& options) {
  std::vector<Rational> exact;
  auto values = invariant_spectrum(p, 1, options, &exact);
  Lambda1 out{values.front(), std::nullopt};
  if (!exact.empty()) out.exact = exact.front();
  return out;
}

}  // namespace reeb
