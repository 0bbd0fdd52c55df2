#ifndef REEB_TESTCONFIG_HPP
#define REEB_TESTCONFIG_HPP

#include <optional>
#include <string>
#include <vector>

#include "reeb/index.hpp"
#include "reeb/polyhedral.hpp"

namespace reeb {

struct AffinePiece {
  VectorQ slope;
  Rational offset;
};

/** g(x) = max_i <slope_i, x> + offset_i. */
class PiecewiseLinearConvex {
 public:
  explicit PiecewiseLinearConvex(std::vector<AffinePiece> pieces);

  const std::vector<AffinePiece>& pieces() const { return pieces_; }
  int dimension() const { return static_cast<int>(pieces_.front().slope.size()); }
  Rational operator()(const VectorQ& x) const;
  double operator()(const Vector<double>& x) const;

  /**
   * Region of P where piece i attains the max, one per piece. ValidationError("redundant_piece")
   * when some region has empty interior.
   */
  std::vector<RationalPolytope> active_regions(const RationalPolytope& p) const;
  /** Drops pieces that are nowhere active on an open subset of P. */
  PiecewiseLinearConvex pruned(const RationalPolytope& p) const;

  Rational min_over(const RationalPolytope& p) const;
  Rational max_over(const RationalPolytope& p) const;
  PiecewiseLinearConvex shifted(const Rational& c) const;

 private:
  std::vector<AffinePiece> pieces_;
};

/** Admissible s: 1 - s mu > 0 on Q, shrunk by 1%. Missing bounds are infinite. */
struct AdmissibleInterval {
  std::optional<Rational> lo, hi;
  bool contains(const Rational& s) const;
  bool contains(double s) const;
  std::string to_string() const;
};

enum class TestConfigMode { orbifold, theorem_certified };

struct ToricTestConfig {
  RationalPolytope base;
  PiecewiseLinearConvex g;   // normalized: min_P g = 0
  std::vector<RationalPolytope> regions;  // active regions of g, aligned with g.pieces()
  Rational ceiling;          // R, relative to the normalized g
  Rational mu_max;           // zeta-moment on the facet {t = 0}
  RationalPolytope roof;     // Q = {(x, t) : x in P, 0 <= t <= R - g(x)}
  ConvexCone total_cone;     // cone_over(Q)
  AdmissibleInterval admissible;
  PolytopeClass roof_class = PolytopeClass::neither;
  std::optional<std::string> warning;

  int n() const { return base.dimension(); }
  /** Reeb vector xi - s zeta on the total cone: slice weight 1 - s (t + mu_max). */
  VectorQ total_reeb(const Rational& s) const;
};

/**
 * Builds the roof polytope and total cone. g is shifted to min_P g = 0 and R with it, so the
 * supplied R is measured against the supplied g; R defaults to max_P g + 1.
 * ValidationError checks: "dimension", "duplicate_piece", "redundant_piece", "ceiling", "delzant_roof".
 */
ToricTestConfig build_testconfig(const RationalPolytope& p, const PiecewiseLinearConvex& g,
                                 std::optional<Rational> ceiling = std::nullopt, const Rational& mu_max = 0,
                                 TestConfigMode mode = TestConfigMode::orbifold);

/** L(g) = int_{dP} g dsigma - (perim/vol) int_P g dx, exact. */
Rational df_donaldson(const RationalPolytope& p, const PiecewiseLinearConvex& g);

/** (a0, a1) of the central fibre at xi - s zeta; DomainError outside the admissible interval. */
IndexCoefficients central_index_coeffs(const ToricTestConfig& tc, const Rational& s);

/** d/ds at s = 0 of the central-fibre coefficients, exact. */
std::array<Rational, 2> central_index_derivatives(const ToricTestConfig& tc);

/** 16 pi a1 / a0^{n/(n+1)} of the central fibre. */
double eh_s(const ToricTestConfig& tc, const Rational& s);

struct SlopeAtZero {
  Rational normalized;       // n DF_CS = slope a0^{n/(n+1)} / (16 pi)
  double slope = 0;          // d/ds EH_s at s = 0
  Rational df_cs;
  Rational df_cs_quotient;   // quotient form of the same derivative data
  Rational stability_slope;  // -normalized: the slope in the opposite zeta orientation
};

SlopeAtZero eh_s_slope_at_zero(const ToricTestConfig& tc);

/** Coefficient of df_donaldson in normalized units: normalized slope = kappa_n L(g). */
Rational kappa(int n);

struct VolumeLimit {
  Rational lhs;  // int_P (c - s(R - g))^{-(n+1)} dx with c = 1 - s mu_max, by piecewise antiderivatives
  Rational rhs;  // a0 of the central fibre through the total cone
  Rational discrepancy;
  double lhs_quadrature = 0;  // vol/c^{n+1} + (n+1) s int_Q (1 - s mu)^{-(n+2)} by Gauss quadrature on Q
  double quadrature_relative_error = 0;
};

VolumeLimit volume_limit_check(const ToricTestConfig& tc, const Rational& s, int nodes_per_axis = 24);

struct EhCurvePoint {
  Rational s;
  Rational a0, a1;
  double eh = 0;
};

/** eh_s on each s, evaluated in parallel; output in input order. */
std::vector<EhCurvePoint> scan(const ToricTestConfig& tc, const std::vector<Rational>& s_values);

/** int_P l^{-(n+1)} dx for affine l = constant + <slope, x> positive on P, exact. */
Rational integrate_affine_power(const RationalPolytope& p, const VectorQ& slope, const Rational& constant);

}  // namespace reeb

#endif
