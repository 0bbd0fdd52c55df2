#include "fd_checks.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace reeb::oracle {

SmoothFunction random_direction(std::mt19937& rng, int n) {
  std::uniform_real_distribution<double> amp(-1, 1), freq(0.5, 2.5), phase(0, 6.283185307179586);
  double a = amp(rng), e = amp(rng);
  std::vector<double> b(n), c(n), d(n);
  for (int i = 0; i < n; ++i) {
    b[i] = amp(rng);
    c[i] = freq(rng);
    d[i] = phase(rng);
  }
  return [=](const Vector<double>& x) {
    FunctionJet j{a, Vector<double>::Zero(n), Matrix<double>::Zero(n, n)};
    for (int i = 0; i < n; ++i) {
      j.value += b[i] * std::sin(c[i] * x(i) + d[i]);
      j.gradient(i) += b[i] * c[i] * std::cos(c[i] * x(i) + d[i]);
      j.hessian(i, i) -= b[i] * c[i] * c[i] * std::sin(c[i] * x(i) + d[i]);
    }
    if (n > 1) {
      j.value += e * x(0) * x(n - 1);
      j.gradient(0) += e * x(n - 1);
      j.gradient(n - 1) += e * x(0);
      j.hessian(0, n - 1) += e;
      j.hessian(n - 1, 0) += e;
    }
    return j;
  };
}

SmoothFunction perturb(const SmoothFunction& f, const SmoothFunction& delta, double e) {
  return [=](const Vector<double>& x) {
    FunctionJet a = f(x), b = delta(x);
    return FunctionJet{a.value + e * b.value, a.gradient + e * b.gradient, a.hessian + e * b.hessian};
  };
}

double FdComparison::coarse_error() const { return std::abs(coarse - analytic); }
double FdComparison::fine_error() const { return std::abs(fine - analytic); }
double FdComparison::relative_error() const { return fine_error() / std::max(std::abs(analytic), 1.0); }
bool FdComparison::second_order(double floor) const {
  double scale = std::max(std::abs(analytic), 1.0);
  return fine_error() < floor * scale || coarse_error() >= std::pow(10.0, 1.5) * fine_error();
}

namespace {

double pairing(const ToricGrid& g, const Vector<double>& density, const SmoothFunction& delta) {
  double s = 0;
  for (Eigen::Index k = 0; k < density.size(); ++k) s += g.rule.weights(k) * density(k) * delta(g.rule.nodes.col(k)).value;
  return s;
}

SmoothFunction one(int n) {
  return [n](const Vector<double>&) {
    return FunctionJet{1.0, Vector<double>::Zero(n), Matrix<double>::Zero(n, n)};
  };
}

}  // namespace

FdComparison gradient_fd(std::shared_ptr<const ToricGrid> grid, const SmoothFunction& f, const SmoothFunction& delta) {
  FdComparison out;
  out.analytic = pairing(*grid, eh_gradient(ConformalFactorGrid::sample(grid, f)), delta);
  auto quotient = [&](double h) {
    double up = eh_value(ConformalFactorGrid::sample(grid, perturb(f, delta, h)));
    double dn = eh_value(ConformalFactorGrid::sample(grid, perturb(f, delta, -h)));
    return (up - dn) / (2 * h);
  };
  out.coarse = quotient(1e-3);
  out.fine = quotient(1e-4);
  return out;
}

FdComparison hessian_fd(std::shared_ptr<const ToricGrid> grid, const SmoothFunction& delta, double c) {
  const ToricGrid& g = *grid;
  const int n = g.n();
  const long double p = static_cast<long double>(n) / (n + 1);
  std::vector<FunctionJet> jets;
  double mean = 0;
  for (Eigen::Index k = 0; k < g.rule.size(); ++k) {
    jets.push_back(delta(g.rule.nodes.col(k)));
    mean += g.rule.weights(k) * jets.back().value;
  }
  mean /= g.rule.weights.sum();
  FdComparison out;
  // At a critical point a constant component of delta drops out of the second variation.
  out.analytic = hessian_form(g, perturb(delta, one(n), -mean), c);
  // Second differences at h = 1e-4 sit below double rounding of EH, so EH(1 + h delta) is
  // re-evaluated here from the grid data in long double.
  auto eh = [&](long double h) {
    long double v = 0, s = 0;
    for (Eigen::Index k = 0; k < g.rule.size(); ++k) {
      const long double f = 1 + h * jets[k].value, w = g.rule.weights(k);
      const Vector<long double> df = h * jets[k].gradient.cast<long double>();
      const long double df2 = df.dot(g.H[k].cast<long double>() * df);
      v += w * std::pow(f, -(n + 1));
      s += w * (g.S(k) * std::pow(f, -n) + n * (n + 1) * df2 * std::pow(f, -(n + 2)));
    }
    return s / std::pow(v, p);
  };
  const long double e0 = eh(0);
  auto quotient = [&](long double h) { return static_cast<double>((eh(h) - 2 * e0 + eh(-h)) / (h * h)); };
  out.coarse = quotient(1e-3L);
  out.fine = quotient(1e-4L);
  return out;
}

FdComparison eh_pq_fd(std::shared_ptr<const ToricGrid> grid, const SmoothFunction& f, const SmoothFunction& delta,
                      double p, double q) {
  FdComparison out;
  out.analytic = pairing(*grid, eh_pq_gradient(ConformalFactorGrid::sample(grid, f), p, q), delta);
  auto quotient = [&](double h) {
    double up = eh_pq(ConformalFactorGrid::sample(grid, perturb(f, delta, h)), p, q).value;
    double dn = eh_pq(ConformalFactorGrid::sample(grid, perturb(f, delta, -h)), p, q).value;
    return (up - dn) / (2 * h);
  };
  out.coarse = quotient(1e-3);
  out.fine = quotient(1e-4);
  return out;
}

}  // namespace reeb::oracle
