#ifndef REEB_VERTICAL_HPP
#define REEB_VERTICAL_HPP

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "reeb/toric_kahler.hpp"

namespace reeb {

/** Value, gradient and Hessian of a function on R^n at one point. */
struct FunctionJet {
  double value = 0;
  Vector<double> gradient;
  Matrix<double> hessian;
};

using SmoothFunction = std::function<FunctionJet(const Vector<double>&)>;

/** x -> constant + <slope, x>. */
SmoothFunction affine_function(const VectorQ& slope, const Rational& constant);

/** Killing-potential tag: f = constant + <slope, x>. */
struct AffineTag {
  VectorQ slope;
  Rational constant;
};

/** A positive conformal factor sampled (with first and second derivatives) on a toric grid. */
class ConformalFactorGrid {
 public:
  static ConformalFactorGrid sample(std::shared_ptr<const ToricGrid> grid, const SmoothFunction& f);
  static ConformalFactorGrid affine(std::shared_ptr<const ToricGrid> grid, const VectorQ& slope,
                                    const Rational& constant);
  /** f = 1 - s <x, zeta>. */
  static ConformalFactorGrid affine_reeb(std::shared_ptr<const ToricGrid> grid, const VectorQ& zeta,
                                         const Rational& s);
  static ConformalFactorGrid from_samples(std::shared_ptr<const ToricGrid> grid, Vector<double> values,
                                          Matrix<double> gradients, std::vector<Matrix<double>> hessians);

  const ToricGrid& grid() const { return *grid_; }
  const std::shared_ptr<const ToricGrid>& shared_grid() const { return grid_; }
  int n() const { return grid_->n(); }
  const Vector<double>& values() const { return values_; }
  const Matrix<double>& gradients() const { return gradients_; }  // n x Q
  const std::vector<Matrix<double>>& hessians() const { return hessians_; }
  const std::optional<AffineTag>& affine_tag() const { return affine_; }

  /** |df|^2_H at every node. */
  Vector<double> gradient_norm2() const;
  /** Delta_H f = -div(H grad f) at every node (nonnegative spectrum). */
  Vector<double> laplacian() const;

 private:
  void validate() const;

  std::shared_ptr<const ToricGrid> grid_;
  Vector<double> values_;
  Matrix<double> gradients_;
  std::vector<Matrix<double>> hessians_;
  std::optional<AffineTag> affine_;
};

struct VerticalReport {
  double vcheck = 0;  // int f^{-(n+1)}
  double scheck = 0;  // int (S f^{-n} + n(n+1) |df|^2 f^{-(n+2)})
  double eh = 0;      // scheck / vcheck^{n/(n+1)}
  double gradient_sup = 0;
  std::optional<Rational> vcheck_exact;  // affine f
  std::optional<Rational> scheck_exact;
  double vcheck_quadrature = 0;
  double scheck_quadrature = 0;
};

VerticalReport vertical_functionals(const ConformalFactorGrid& f);

/** Pointwise f S - 2(n+1) Delta_H f - (n+1)(n+2) |df|^2_H / f. */
Vector<double> tanno_scalar(const ConformalFactorGrid& f);

/**
 * L^2(dx) density g of the first variation: d/de EH(f + e delta)|_0 = int g delta dx, with
 * g = -n V^{-n/(n+1)} f^{-(n+2)} (scal_q(f) - S/V).
 */
Vector<double> eh_gradient(const ConformalFactorGrid& f);

/** EH(f) by quadrature only. */
double eh_value(const ConformalFactorGrid& f);

struct HessianSpectrum {
  std::vector<double> values;     // n V^{-n/(n+1)} (2(n+1) lambda_i - C), ascending
  std::vector<double> lambdas;
  bool positive_definite = false; // 2(n+1) lambda_1 > C
};

/** Vertical Hessian at f = 1 on zero-mean invariant functions; C defaults to sbar. */
HessianSpectrum hessian_spectrum(const RationalPolytope& p, std::optional<double> c, int k,
                                 const SpectralOptions& options = {});

/** Second variation of EH at f = 1 along delta (constant S = C assumed): the Hessian quadratic form. */
double hessian_form(const ToricGrid& grid, const SmoothFunction& delta, double c);

struct EhPq {
  double value = 0;
  bool flagged = false;      // p(p+1) < 0: gradient term has negative weight
  bool subcritical = false;  // 2(q+1)/(p+1) below the Sobolev exponent 2n/(n-1)
};

/** int (f^{p+1} S + p(p+1) f^{p-1} |df|^2_H) / (int f^{q+1})^{(p+1)/(q+1)}. */
EhPq eh_pq(const ConformalFactorGrid& f, double p, double q);

/** Density of the first variation of eh_pq: (p+1) D^{-e} (Scal_{f^p} - (N/D) f^q). */
Vector<double> eh_pq_gradient(const ConformalFactorGrid& f, double p, double q);

bool eh_pq_subcritical(int n, double p, double q);

enum class YamabeStatus { converged, max_iter };
std::string to_string(YamabeStatus s);

struct YamabeOptions {
  double tol = 1e-8;
  int max_iter = 500;
  int degree = 0;           // 0: 24 for n = 1, 16 for n = 2, 8 otherwise
  int nodes_per_axis = 64;
};

struct YamabeResult {
  ConformalFactorGrid f;
  double eh = 0;
  int iterations = 0;
  YamabeStatus status = YamabeStatus::max_iter;
  double projected_gradient_sup = 0;  // sup over nodes of the Galerkin gradient
  double eh_gradient_sup = 0;         // sup over nodes of eh_gradient(f)
  std::vector<double> trace;          // EH after each accepted step, starting with the initial value
};

/**
 * Minimizes EH over invariant conformal factors in the variable u = f^{-n/2},
 * R(u) = int (S u^2 + 2q H(du, du)) / (int u^q)^{2/q}, q = 2(n+1)/n, on a polynomial Galerkin space.
 */
YamabeResult yamabe_minimize(const RationalPolytope& p, const SmoothFunction& init, const YamabeOptions& options = {});

}  // namespace reeb

#endif
