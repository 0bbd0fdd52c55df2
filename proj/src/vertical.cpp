#include "reeb/vertical.hpp"

#include <algorithm>
#include <cmath>

#include "reeb/index.hpp"

namespace reeb {

SmoothFunction affine_function(const VectorQ& slope, const Rational& constant) {
  Vector<double> m = scalar_cast<double>(slope);
  double c = to_double(constant);
  return [m, c](const Vector<double>& x) {
    return FunctionJet{c + m.dot(x), m, Matrix<double>::Zero(m.size(), m.size())};
  };
}

ConformalFactorGrid ConformalFactorGrid::sample(std::shared_ptr<const ToricGrid> grid, const SmoothFunction& f) {
  const Eigen::Index q = grid->rule.size();
  const int n = grid->n();
  Vector<double> values(q);
  Matrix<double> grads(n, q);
  std::vector<Matrix<double>> hess(q);
  for (Eigen::Index k = 0; k < q; ++k) {
    FunctionJet j = f(grid->rule.nodes.col(k));
    if (j.gradient.size() != n || j.hessian.rows() != n || j.hessian.cols() != n)
      throw DimensionError("function jet has the wrong dimension");
    values(k) = j.value;
    grads.col(k) = j.gradient;
    hess[k] = j.hessian;
  }
  return from_samples(std::move(grid), std::move(values), std::move(grads), std::move(hess));
}

ConformalFactorGrid ConformalFactorGrid::affine(std::shared_ptr<const ToricGrid> grid, const VectorQ& slope,
                                                const Rational& constant) {
  if (slope.size() != grid->n()) throw DimensionError("slope has the wrong dimension");
  auto out = sample(std::move(grid), affine_function(slope, constant));
  out.affine_ = AffineTag{slope, constant};
  return out;
}

ConformalFactorGrid ConformalFactorGrid::affine_reeb(std::shared_ptr<const ToricGrid> grid, const VectorQ& zeta,
                                                     const Rational& s) {
  VectorQ slope = zeta;
  for (Eigen::Index i = 0; i < slope.size(); ++i) slope(i) = -s * zeta(i);
  return affine(std::move(grid), slope, Rational(1));
}

ConformalFactorGrid ConformalFactorGrid::from_samples(std::shared_ptr<const ToricGrid> grid, Vector<double> values,
                                                      Matrix<double> gradients, std::vector<Matrix<double>> hessians) {
  ConformalFactorGrid f;
  f.grid_ = std::move(grid);
  f.values_ = std::move(values);
  f.gradients_ = std::move(gradients);
  f.hessians_ = std::move(hessians);
  f.validate();
  return f;
}

void ConformalFactorGrid::validate() const {
  const Eigen::Index q = grid_->rule.size();
  if (values_.size() != q || gradients_.cols() != q || gradients_.rows() != n() ||
      static_cast<Eigen::Index>(hessians_.size()) != q)
    throw DimensionError("samples do not match the grid");
  if (!(values_.minCoeff() > 0)) throw DomainError("conformal factor must be positive on the grid");
}

Vector<double> ConformalFactorGrid::gradient_norm2() const {
  Vector<double> out(values_.size());
  for (Eigen::Index k = 0; k < out.size(); ++k) out(k) = gradients_.col(k).dot(grid_->H[k] * gradients_.col(k));
  return out;
}

Vector<double> ConformalFactorGrid::laplacian() const {
  Vector<double> out(values_.size());
  for (Eigen::Index k = 0; k < out.size(); ++k)
    out(k) = -grid_->div_H.col(k).dot(gradients_.col(k)) - (grid_->H[k].cwiseProduct(hessians_[k])).sum();
  return out;
}

namespace {

struct Quadrature {
  double vcheck;
  double scheck;
};

Quadrature quadrature(const ConformalFactorGrid& f) {
  const auto& g = f.grid();
  const int n = f.n();
  Vector<double> df2 = f.gradient_norm2();
  // Long double accumulation keeps second differences of EH above the rounding floor at h = 1e-4.
  long double v = 0, s = 0;
  for (Eigen::Index k = 0; k < f.values().size(); ++k) {
    const long double x = f.values()(k), w = g.rule.weights(k);
    const long double xn = std::pow(x, -n);
    v += w * xn / x;
    s += w * (g.S(k) * xn + n * (n + 1) * df2(k) * xn / (x * x));
  }
  return {static_cast<double>(v), static_cast<double>(s)};
}

Vector<double> gradient_from(const ConformalFactorGrid& f, double vcheck, double scheck) {
  const double n = f.n();
  Vector<double> scal = tanno_scalar(f);
  double c = -n * std::pow(vcheck, -n / (n + 1));
  Vector<double> g(scal.size());
  for (Eigen::Index k = 0; k < g.size(); ++k)
    g(k) = c * std::pow(f.values()(k), -(n + 2)) * (scal(k) - scheck / vcheck);
  return g;
}

}  // namespace

Vector<double> tanno_scalar(const ConformalFactorGrid& f) {
  const double n = f.n();
  Vector<double> lap = f.laplacian();
  Vector<double> df2 = f.gradient_norm2();
  const auto& S = f.grid().S;
  return f.values().cwiseProduct(S) - 2 * (n + 1) * lap - (n + 1) * (n + 2) * df2.cwiseQuotient(f.values());
}

VerticalReport vertical_functionals(const ConformalFactorGrid& f) {
  const int n = f.n();
  Quadrature qd = quadrature(f);
  VerticalReport r;
  r.vcheck_quadrature = qd.vcheck;
  r.scheck_quadrature = qd.scheck;
  r.vcheck = qd.vcheck;
  r.scheck = qd.scheck;
  if (const auto& tag = f.affine_tag()) {
    // Slice identity: V = a0 and S = 4 a1 of the cone over P at the Reeb vector (slope, constant).
    ConvexCone c = cone_over(f.grid().polytope);
    VectorQ xi(n + 1);
    xi.head(n) = tag->slope;
    xi(n) = tag->constant;
    auto ab = index_coeffs(c, xi);
    r.vcheck_exact = ab.a0;
    r.scheck_exact = 4 * ab.a1;
    r.vcheck = to_double(ab.a0);
    r.scheck = to_double(4 * ab.a1);
  }
  r.eh = r.scheck / std::pow(r.vcheck, double(n) / (n + 1));
  r.gradient_sup = gradient_from(f, qd.vcheck, qd.scheck).cwiseAbs().maxCoeff();
  return r;
}

double eh_value(const ConformalFactorGrid& f) {
  Quadrature qd = quadrature(f);
  return qd.scheck / std::pow(qd.vcheck, double(f.n()) / (f.n() + 1));
}

Vector<double> eh_gradient(const ConformalFactorGrid& f) {
  Quadrature qd = quadrature(f);
  return gradient_from(f, qd.vcheck, qd.scheck);
}

HessianSpectrum hessian_spectrum(const RationalPolytope& p, std::optional<double> c, int k,
                                 const SpectralOptions& options) {
  const int n = p.dimension();
  PolarizedToricData data = polarized_from_polytope(p);
  double cc = c ? *c : to_double(data.sbar);
  double scale = n / std::pow(to_double(data.vol), double(n) / (n + 1));
  HessianSpectrum out;
  out.lambdas = invariant_spectrum(p, k, options);
  for (double l : out.lambdas) out.values.push_back(scale * (2 * (n + 1) * l - cc));
  out.positive_definite = !out.lambdas.empty() && 2 * (n + 1) * out.lambdas.front() > cc;
  return out;
}

double hessian_form(const ToricGrid& grid, const SmoothFunction& delta, double c) {
  const double n = grid.n();
  double dirichlet = 0, mass = 0;
  for (Eigen::Index k = 0; k < grid.rule.size(); ++k) {
    FunctionJet j = delta(grid.rule.nodes.col(k));
    dirichlet += grid.rule.weights(k) * j.gradient.dot(grid.H[k] * j.gradient);
    mass += grid.rule.weights(k) * j.value * j.value;
  }
  double vol = grid.rule.weights.sum();
  return n / std::pow(vol, n / (n + 1)) * (2 * (n + 1) * dirichlet - c * mass);
}

bool eh_pq_subcritical(int n, double p, double q) {
  if (n <= 1) return true;
  return 2 * (q + 1) / (p + 1) < 2.0 * n / (n - 1);
}

EhPq eh_pq(const ConformalFactorGrid& f, double p, double q) {
  if (q == -1) throw DomainError("q = -1 is excluded");
  const auto& g = f.grid();
  Vector<double> df2 = f.gradient_norm2();
  double num = 0, den = 0;
  for (Eigen::Index k = 0; k < df2.size(); ++k) {
    double x = f.values()(k);
    num += g.rule.weights(k) * (std::pow(x, p + 1) * g.S(k) + p * (p + 1) * std::pow(x, p - 1) * df2(k));
    den += g.rule.weights(k) * std::pow(x, q + 1);
  }
  EhPq out;
  out.value = num / std::pow(den, (p + 1) / (q + 1));
  out.flagged = p * (p + 1) < 0;
  out.subcritical = eh_pq_subcritical(f.n(), p, q);
  return out;
}

Vector<double> eh_pq_gradient(const ConformalFactorGrid& f, double p, double q) {
  if (q == -1) throw DomainError("q = -1 is excluded");
  const auto& g = f.grid();
  Vector<double> df2 = f.gradient_norm2();
  Vector<double> lap = f.laplacian();
  const Eigen::Index m = df2.size();
  double num = 0, den = 0;
  for (Eigen::Index k = 0; k < m; ++k) {
    double x = f.values()(k);
    num += g.rule.weights(k) * (std::pow(x, p + 1) * g.S(k) + p * (p + 1) * std::pow(x, p - 1) * df2(k));
    den += g.rule.weights(k) * std::pow(x, q + 1);
  }
  double e = (p + 1) / (q + 1);
  Vector<double> out(m);
  for (Eigen::Index k = 0; k < m; ++k) {
    double x = f.values()(k);
    double scal = std::pow(x, p) * g.S(k) + 2 * p * std::pow(x, p - 1) * lap(k) -
                  p * (p - 1) * std::pow(x, p - 2) * df2(k);
    out(k) = (p + 1) * std::pow(den, -e) * (scal - num / den * std::pow(x, q));
  }
  return out;
}

std::string to_string(YamabeStatus s) { return s == YamabeStatus::converged ? "converged" : "max_iter"; }

namespace {

struct RayleighState {
  Vector<double> c;
  Vector<double> u;
  double value = 0;
  Vector<double> gradient;
};

}  // namespace

YamabeResult yamabe_minimize(const RationalPolytope& p, const SmoothFunction& init, const YamabeOptions& options) {
  if (!(options.tol > 0)) throw DomainError("tolerance must be positive");
  const int n = p.dimension();
  const double qexp = 2.0 * (n + 1) / n;
  int degree = options.degree > 0 ? options.degree : n == 1 ? 24 : n == 2 ? 16 : 8;
  auto grid = std::make_shared<const ToricGrid>(ToricGrid::build(p, options.nodes_per_axis));
  PolynomialBasis basis(*grid, degree);
  const Matrix<double>& phi = basis.values();
  const Vector<double>& w = grid->rule.weights;
  const Eigen::Index nq = w.size();

  Vector<double> u0(nq);
  for (Eigen::Index k = 0; k < nq; ++k) {
    double f0 = init(grid->rule.nodes.col(k)).value;
    if (!(f0 > 0)) throw DomainError("initial conformal factor must be positive");
    u0(k) = std::pow(f0, -n / 2.0);
  }

  Matrix<double> K = basis.stiffness(*grid);
  Matrix<double> A = phi.transpose() * (w.cwiseProduct(grid->S)).asDiagonal() * phi + 2 * qexp * K;
  A = (A + A.transpose()) / 2;
  Matrix<double> B = 2 * qexp * K;
  B.diagonal().array() += grid->S.cwiseAbs().maxCoeff() + 1;

  auto evaluate = [&](const Vector<double>& c, RayleighState& st) {
    st.c = c;
    st.u = phi * c;
    if (!(st.u.minCoeff() > 0)) return false;
    double num = c.dot(A * c);
    Vector<double> uq1 = st.u.array().pow(qexp - 1).matrix();
    double den = w.dot(uq1.cwiseProduct(st.u));
    double scale = std::pow(den, -2 / qexp);
    st.value = num * scale;
    st.gradient = scale * (2 * (A * c) - 2 * (num / den) * (phi.transpose() * w.cwiseProduct(uq1)));
    return true;
  };
  auto normalize = [&](RayleighState& st) {
    double den = w.dot(st.u.array().pow(qexp).matrix());
    Vector<double> c = st.c * std::pow(den, -1 / qexp);
    evaluate(c, st);
  };
  // Hessian of R = N D^{-2/q} at a normalized state (D = 1).
  auto hessian = [&](const RayleighState& st) {
    double num = st.c.dot(A * st.c);
    Vector<double> dn = 2 * (A * st.c);
    Vector<double> dd = qexp * (phi.transpose() * w.cwiseProduct(st.u.array().pow(qexp - 1).matrix()));
    Vector<double> wu = qexp * (qexp - 1) * w.cwiseProduct(st.u.array().pow(qexp - 2).matrix());
    const double r = 2 / qexp;
    Matrix<double> h = 2 * A - r * (dn * dd.transpose() + dd * dn.transpose()) + r * (r + 1) * num * dd * dd.transpose() -
                       r * num * (phi.transpose() * wu.asDiagonal() * phi);
    return Matrix<double>((h + h.transpose()) / 2);
  };

  RayleighState st;
  // Start from the L^2 projection of u0; positivity on the grid is required of it too.
  if (!evaluate(phi.transpose() * w.cwiseProduct(u0), st))
    throw DomainError("projected initial factor is not positive on the grid");
  normalize(st);

  YamabeResult out{ConformalFactorGrid{}, 0, 0, YamabeStatus::max_iter, 0, 0, {st.value}};
  double mu = 1e-8;
  for (;;) {
    out.projected_gradient_sup = (phi * st.gradient).cwiseAbs().maxCoeff();
    if (out.projected_gradient_sup <= options.tol) {
      out.status = YamabeStatus::converged;
      break;
    }
    if (out.iterations >= options.max_iter) break;
    // Regularized Newton: (Hess R + mu B) d = -grad R with mu raised until the system is positive
    // definite and the step descends; large mu degenerates to the preconditioned gradient.
    Matrix<double> h = hessian(st);
    RayleighState trial;
    bool accepted = false;
    for (mu = std::max(mu / 10, 1e-10); mu < 1e8 && !accepted; mu *= 10) {
      Eigen::LLT<Matrix<double>> llt(h + mu * B);
      if (llt.info() != Eigen::Success) continue;
      Vector<double> d = -llt.solve(st.gradient);
      double slope = st.gradient.dot(d);
      if (!(slope < 0)) continue;
      for (double t = 1; t > 1e-3 && !accepted; t /= 2) {
        if (!evaluate(st.c + t * d, trial)) continue;
        normalize(trial);
        accepted = trial.value <= st.value + 1e-4 * t * slope && trial.value <= st.value;
      }
      if (accepted) break;
    }
    if (!accepted) break;
    st = std::move(trial);
    ++out.iterations;
    out.trace.push_back(st.value);
  }

  // f = u^{-2/n} with derivatives by the chain rule.
  Matrix<double> values;
  std::vector<Matrix<double>> grads, hess;
  basis.evaluate(grid->rule.nodes, values, &grads, &hess);
  const double e = -2.0 / n;
  Vector<double> fv(nq);
  Matrix<double> fg(n, nq);
  std::vector<Matrix<double>> fh(nq, Matrix<double>(n, n));
  for (Eigen::Index k = 0; k < nq; ++k) {
    double u = st.u(k);
    Vector<double> du(n);
    Matrix<double> d2u(n, n);
    for (int a = 0; a < n; ++a) {
      du(a) = grads[a].row(k).dot(st.c);
      for (int b = 0; b < n; ++b) d2u(a, b) = hess[a * n + b].row(k).dot(st.c);
    }
    fv(k) = std::pow(u, e);
    fg.col(k) = e * std::pow(u, e - 1) * du;
    fh[k] = e * std::pow(u, e - 1) * d2u + e * (e - 1) * std::pow(u, e - 2) * du * du.transpose();
  }
  out.f = ConformalFactorGrid::from_samples(grid, std::move(fv), std::move(fg), std::move(fh));
  out.eh = st.value;
  out.eh_gradient_sup = eh_gradient(out.f).cwiseAbs().maxCoeff();
  return out;
}

}  // namespace reeb
