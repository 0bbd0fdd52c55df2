#ifndef REEB_REEB_OPT_HPP
#define REEB_REEB_OPT_HPP

#include <string>
#include <vector>

#include "reeb/index.hpp"

namespace reeb {

/** Primitive sum of the generators of c. It is interior to c, so every slice <b, xi> = const is compact. */
VectorZ default_slice_covector(const ConvexCone& c);

/** Lattice basis of b^perp, as columns. */
MatrixZ slice_lattice_basis(const VectorZ& b);

/** Euclidean projection of an ambient covector onto b^perp. */
Vector<double> project_to_slice(const Vector<double>& covector, const VectorZ& b);

/** Cone, slice covector b, the level <b, xi> and the current iterate. */
struct ReebSlice {
  ConvexCone cone;
  VectorZ b;
  Rational level;
  Vector<double> xi;

  /** Validates b (interior to the cone) and init (in the open Reeb cone). */
  ReebSlice(ConvexCone c, VectorZ b, const VectorQ& init);

  /** Orthonormal basis of b^perp, as columns. */
  Matrix<double> tangent() const;
};

struct ReebGradient {
  VectorQ exact;            // grad a1 - p a1 grad a0 / a0 with p = n/(n+1)
  Vector<double> covector;  // ambient gradient of 16 pi a1 / a0^p, equal to 16 pi a0^{-p} exact
  Vector<double> slice;     // covector restricted to b^perp for the default slice covector
};

/** Gradient of the affine EH functional at a rational Reeb vector. <covector, xi> = 0. */
ReebGradient eh_reeb_gradient(const ConvexCone& c, const VectorQ& xi);

enum class ReebObjective { eh, volume };
enum class TerminationReason { converged, max_iter, line_search_failed };

std::string to_string(ReebObjective o);
std::string to_string(TerminationReason r);

struct OptimizationTrace {
  std::vector<Vector<double>> iterates;
  std::vector<double> values;
  std::vector<double> gradient_norms;
  /** Smallest eigenvalue of the slice Hessian at each iterate. */
  std::vector<double> hessian_min_eigenvalues;
  /** Relative gap between the floating and exact gradients at each snap point. */
  std::vector<double> snap_drift;
  TerminationReason reason = TerminationReason::max_iter;

  int newton_steps() const { return static_cast<int>(iterates.size()) - 1; }
  bool monotone() const;
};

struct ReebOptions {
  double tol = 1e-10;
  int max_iter = 100;
  int snap_every = 10;
  long snap_denominator = 1'000'000'000'000L;
};

struct ReebOptimum {
  Vector<double> xi;
  VectorQ xi_rational;    // snapped terminal point
  double value = 0;       // 16 pi a1 / a0^p, or a0
  double exact_gradient_norm = 0;  // slice gradient norm evaluated exactly at xi_rational
  OptimizationTrace trace;
};

/**
 * Damped Newton on the slice {<b, xi> = <b, init>}. Steps are halved until the trial point is
 * interior and does not increase the objective. Indefinite slice Hessians are replaced by their
 * absolute values.
 */
ReebOptimum minimize_reeb(ReebObjective objective, const ConvexCone& c, const VectorZ& b, const VectorQ& init,
                          const ReebOptions& options = {});

ReebOptimum minimize_eh_reeb(const ConvexCone& c, const VectorZ& b, const VectorQ& init,
                             const ReebOptions& options = {});

ReebOptimum minimize_volume_reeb(const ConvexCone& c, const VectorZ& b, const VectorQ& init,
                                 const ReebOptions& options = {});

struct RayRow {
  Rational s;
  bool valid = false;
  Rational a0, a1;
  double eh = 0;
};

/** (a0, a1, EH) along xi - s zeta; rows leaving the Reeb cone are marked invalid. */
std::vector<RayRow> scan_ray(const ConvexCone& c, const VectorQ& xi, const VectorQ& zeta,
                             const std::vector<Rational>& s_grid);

}  // namespace reeb

#endif
