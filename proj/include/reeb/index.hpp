#ifndef REEB_INDEX_HPP
#define REEB_INDEX_HPP

#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include "reeb/polyhedral.hpp"

namespace reeb {

struct IndexCoefficients {
  Rational a0;
  Rational a1;
};

/** Values, gradients and Hessians of (a0, a1) at a Reeb vector. */
template <typename Scalar>
struct CoefficientJet {
  Scalar a0, a1;
  Vector<Scalar> grad_a0, grad_a1;
  Matrix<Scalar> hess_a0, hess_a1;
};

/**
 * Rational summands |det| c / prod <w_j, xi> behind a0 and a1, precomputed from a
 * triangulation of the cone and face-lattice triangulations of its facets.
 */
class IndexCharacter {
 public:
  struct Term {
    Rational weight;             // |det| divided by n! (volume) or 2 (n-1)! (boundary)
    std::vector<VectorZ> gens;   // generators of the simplicial cone
  };

  explicit IndexCharacter(const ConvexCone& c);

  const ConvexCone& cone() const { return cone_; }
  /** n, where the cone lives in dimension n+1. */
  int n() const { return cone_.dimension() - 1; }
  const std::vector<Term>& volume_terms() const { return vol_; }
  const std::vector<Term>& boundary_terms() const { return bdy_; }

  bool contains_reeb(const VectorQ& xi) const { return cone_contains_dual(xi); }

  /** Exact (a0, a1); throws ReebMembershipError outside the Reeb cone. */
  IndexCoefficients coefficients(const VectorQ& xi) const;

  /** (d^k/ds^k a0, d^k/ds^k a1) at s=0 along xi - s zeta, k in {0,1,2,3}. */
  template <typename Scalar>
  std::array<Scalar, 2> directional(const Vector<Scalar>& xi, const Vector<Scalar>& zeta, int k) const {
    check<Scalar>(xi);
    return {directional_sum<Scalar>(vol_, xi, zeta, k), directional_sum<Scalar>(bdy_, xi, zeta, k)};
  }

  /** Value, gradient and (if order >= 2) Hessian of (a0, a1) with respect to xi. */
  template <typename Scalar>
  CoefficientJet<Scalar> jet(const Vector<Scalar>& xi, int order = 2) const {
    check<Scalar>(xi);
    const Eigen::Index d = xi.size();
    CoefficientJet<Scalar> j;
    accumulate_jet<Scalar>(vol_, xi, order, j.a0, j.grad_a0, j.hess_a0, d);
    accumulate_jet<Scalar>(bdy_, xi, order, j.a1, j.grad_a1, j.hess_a1, d);
    return j;
  }

  /**
   * Forward rounding-error bound (relative) for the double-precision values of a0 and a1
   * at xi: unit roundoff times a summation-plus-pairing-conditioning factor.
   */
  std::array<double, 2> relative_error_bound(const Vector<double>& xi) const;

 private:
  bool cone_contains_dual(const VectorQ& xi) const;

  template <typename Scalar>
  void check(const Vector<Scalar>& xi) const {
    if (xi.size() != cone_.dimension()) throw DimensionError("Reeb vector has the wrong length");
    for (const auto& w : cone_.generators())
      if (!(pair<Scalar>(w, xi) > Scalar(0))) throw ReebMembershipError("Reeb vector is not in the open Reeb cone");
  }

  template <typename Scalar>
  static Scalar directional_sum(const std::vector<Term>& terms, const Vector<Scalar>& xi, const Vector<Scalar>& zeta,
                                int k) {
    Scalar total(0);
    for (const auto& t : terms) {
      Scalar f = scalar_cast<Scalar>(t.weight);
      Scalar r1(0), r2(0), r3(0);
      for (const auto& w : t.gens) {
        Scalar p = pair<Scalar>(w, xi);
        Scalar r = pair<Scalar>(w, zeta) / p;
        f /= p;
        r1 += r;
        r2 += r * r;
        r3 += r * r * r;
      }
      switch (k) {
        case 0: total += f; break;
        case 1: total += f * r1; break;
        case 2: total += f * (r1 * r1 + r2); break;
        case 3: total += f * (r1 * r1 * r1 + Scalar(3) * r1 * r2 + Scalar(2) * r3); break;
        default: throw DomainError("derivative order must be 0..3");
      }
    }
    return total;
  }

  template <typename Scalar>
  static void accumulate_jet(const std::vector<Term>& terms, const Vector<Scalar>& xi, int order, Scalar& value,
                             Vector<Scalar>& grad, Matrix<Scalar>& hess, Eigen::Index d) {
    value = Scalar(0);
    grad = Vector<Scalar>::Zero(d);
    hess = Matrix<Scalar>::Zero(d, d);
    Vector<Scalar> s1(d);
    Matrix<Scalar> s2(d, d);
    for (const auto& t : terms) {
      Scalar f = scalar_cast<Scalar>(t.weight);
      s1.setZero();
      if (order >= 2) s2.setZero();
      for (const auto& w : t.gens) {
        Scalar p = pair<Scalar>(w, xi);
        f /= p;
        Vector<Scalar> wp(d);
        for (Eigen::Index a = 0; a < d; ++a) wp(a) = integer_cast<Scalar>(w(a)) / p;
        s1 += wp;
        if (order >= 2) s2 += wp * wp.transpose();
      }
      value += f;
      if (order >= 1) grad -= f * s1;
      if (order >= 2) hess += f * (s1 * s1.transpose() + s2);
    }
  }

  ConvexCone cone_;
  std::vector<Term> vol_;
  std::vector<Term> bdy_;
};

/** True iff <w, xi> > 0 for every generator w. */
bool reeb_cone_contains(const ConvexCone& c, const VectorQ& xi);

IndexCoefficients index_coeffs(const ConvexCone& c, const VectorQ& xi);

/** (d^k a0/ds^k, d^k a1/ds^k) at s=0 along xi - s zeta, exact. */
std::array<Rational, 2> index_coeffs_derivative(const ConvexCone& c, const VectorQ& xi, const VectorQ& zeta, int k);

/** 16 pi a1 / a0^{n/(n+1)}. */
double affine_eh(int n, const Rational& a0, const Rational& a1);
double affine_eh(const ConvexCone& c, const VectorQ& xi);

/** DF = (1/n)(Da1 - n/(n+1) a1 Da0/a0), Da = d/ds a(xi - s zeta) at s=0. */
Rational df_cs(int n, const Rational& a0, const Rational& a1, const Rational& da0, const Rational& da1);
Rational df_cs(const ConvexCone& c, const VectorQ& xi, const VectorQ& zeta);

/** The quotient form (a0/n) D(a1/a0) + a1 Da0/(n(n+1)). */
Rational df_cs_quotient_form(int n, const Rational& a0, const Rational& a1, const Rational& da0, const Rational& da1);
Rational df_cs_quotient_form(const ConvexCone& c, const VectorQ& xi, const VectorQ& zeta);

/** d/ds EH^a(xi - s zeta) at 0, evaluated as 16 pi n DF / a0^{n/(n+1)}. */
double affine_eh_slope(int n, const Rational& a0, const Rational& df);

struct LatticeCharacter {
  double partial_sum = 0;             // F at the requested t
  std::array<double, 3> nodes{};      // t, t/2, t/4
  std::array<double, 3> scaled{};     // t^{n+1} F / n! at each node
  double a0 = 0, a1 = 0;              // quadratic extrapolation to t = 0
  bool truncation_warning = false;
};

/**
 * Sum of exp(-t <alpha, xi>) over lattice points alpha of c with <alpha, xi> <= K, plus the
 * extrapolated pole coefficients from the nodes t, t/2, t/4 (cutoff scaled to keep tK fixed).
 */
LatticeCharacter lattice_character(const ConvexCone& c, const Vector<double>& xi, double t, double cutoff);

/** Truncated lattice sum alone. */
double lattice_sum(const ConvexCone& c, const Vector<double>& xi, double t, double cutoff);

}  // namespace reeb

#endif
