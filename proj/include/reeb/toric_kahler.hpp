#ifndef REEB_TORIC_KAHLER_HPP
#define REEB_TORIC_KAHLER_HPP

#include <functional>
#include <optional>
#include <vector>

#include "reeb/polyhedral.hpp"
#include "reeb/quadrature.hpp"

namespace reeb {

struct PolarizedToricData {
  RationalPolytope polytope;
  Rational vol;    // Euclidean volume of P
  Rational perim;  // lattice-normalized boundary measure
  Rational sbar;   // 2 perim / vol
  PolytopeClass classification = PolytopeClass::neither;
};

/** Requires P Delzant or simplicial. */
PolarizedToricData polarized_from_polytope(const RationalPolytope& p);

/** Metric data of the Guillemin potential at a point. */
template <typename Scalar>
struct GuilleminPoint {
  Matrix<Scalar> G;            // Hess u
  Matrix<Scalar> H;            // G^{-1}
  Vector<Scalar> div_H;        // (sum_i dH_ij/dx_i)_j
  Scalar scalar_curvature{};   // -sum_ij d^2 H_ij / dx_i dx_j
};

/**
 * u(x) = (1/2) sum_k l_k(x) log l_k(x). Hessian G = (1/2) sum v v^T / l and its derivatives are
 * closed form, so H, div H and the Abreu scalar curvature are evaluated analytically.
 */
class SymplecticPotential {
 public:
  explicit SymplecticPotential(const RationalPolytope& p);

  const RationalPolytope& polytope() const { return p_; }

  template <typename Scalar>
  Scalar potential(const Vector<Scalar>& x) const;

  template <typename Scalar>
  GuilleminPoint<Scalar> at(const Vector<Scalar>& x, bool curvature = true) const;

  template <typename Scalar>
  Matrix<Scalar> inverse_hessian(const Vector<Scalar>& x) const {
    return at<Scalar>(x, false).H;
  }

 private:
  template <typename Scalar>
  void require_interior(const Vector<Scalar>& x) const;

  RationalPolytope p_;
  std::vector<Vector<double>> normals_;
  std::vector<Vector<long double>> normals_ld_;
};

/** Abreu scalar curvature of the Guillemin metric; DomainError on or outside the boundary. */
double abreu_scalar(const RationalPolytope& p, const Vector<double>& x);

/** Metric fields sampled on a quadrature rule, shared by the spectral and vertical solvers. */
struct ToricGrid {
  RationalPolytope polytope;
  QuadratureRule<double> rule;
  std::vector<Matrix<double>> H;   // inverse Hessian at each node
  Matrix<double> div_H;            // n x Q
  Vector<double> S;                // scalar curvature at each node

  static ToricGrid build(const RationalPolytope& p, int nodes_per_axis);
  int n() const { return polytope.dimension(); }
  double integrate(const Vector<double>& values) const { return rule.weights.dot(values); }
};

/**
 * Polynomial space of total degree <= degree, Legendre products on the bounding box,
 * orthonormalized in L^2(P) on the grid (first function constant).
 */
class PolynomialBasis {
 public:
  PolynomialBasis(const ToricGrid& grid, int degree);

  Eigen::Index size() const { return transform_.cols(); }
  int degree() const { return degree_; }
  /** Values at the grid nodes, Q x N. */
  const Matrix<double>& values() const { return phi_; }
  /** Partial derivative along axis a at the grid nodes, Q x N. */
  const Matrix<double>& derivative(int a) const { return dphi_[a]; }

  /** Values, gradients and Hessians (index a * n + b) of the basis at arbitrary points (columns of x). */
  void evaluate(const Matrix<double>& x, Matrix<double>& values, std::vector<Matrix<double>>* gradients,
                std::vector<Matrix<double>>* hessians = nullptr) const;

  /** Stiffness int H(dphi_i, dphi_j) dx. */
  Matrix<double> stiffness(const ToricGrid& grid) const;

 private:
  void raw(const Matrix<double>& x, Matrix<double>& values, std::vector<Matrix<double>>* gradients,
           std::vector<Matrix<double>>* hessians) const;

  int n_ = 0;
  int degree_ = 0;
  std::vector<std::vector<int>> exponents_;
  Vector<double> lo_, hi_;
  Matrix<double> transform_;  // raw -> orthonormal
  Matrix<double> phi_;
  std::vector<Matrix<double>> dphi_;
};

struct SpectralOptions {
  int nodes_per_axis = 64;
  int degree = 12;
};

/** Legendre spectrum of an origin box: sum_i 2 j_i (j_i + 1)/a_i, sorted, with multiplicity. */
std::vector<Rational> box_spectrum(const std::vector<Rational>& sides, int count);

struct Lambda1 {
  double value = 0;
  std::optional<Rational> exact;  // boxes
};

/** First nonzero eigenvalue of the torus-invariant Laplacian; requires P Delzant. */
Lambda1 invariant_lambda1(const RationalPolytope& p, const SpectralOptions& options = {});

/** The k lowest nonzero invariant eigenvalues (Rayleigh–Ritz unless P is a box). */
std::vector<double> invariant_spectrum(const RationalPolytope& p, int k, const SpectralOptions& options,
                                       std::vector<Rational>* exact = nullptr);

/** Lowest Rayleigh–Ritz eigenpairs on the zero-mean polynomial space. */
struct RitzPairs {
  Vector<double> values;
  Matrix<double> coefficients;  // columns in the orthonormal basis
};
RitzPairs ritz_pairs(const ToricGrid& grid, const PolynomialBasis& basis);

}  // namespace reeb

#endif
