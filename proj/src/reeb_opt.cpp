#include "reeb/reeb_opt.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "reeb/linalg.hpp"
#include "reeb/parallel.hpp"

namespace reeb {

using LD = long double;

VectorZ default_slice_covector(const ConvexCone& c) {
  VectorZ sum = VectorZ::Zero(c.dimension());
  for (const auto& w : c.generators()) sum += w;
  return primitive(sum);
}

MatrixZ slice_lattice_basis(const VectorZ& b) {
  MatrixZ row(1, b.size());
  row.row(0) = b.transpose();
  return integer_kernel(row);
}

Vector<double> project_to_slice(const Vector<double>& covector, const VectorZ& b) {
  Vector<double> bd = b.unaryExpr([](const Integer& z) { return z.convert_to<double>(); });
  return covector - (covector.dot(bd) / bd.squaredNorm()) * bd;
}

namespace {

template <typename Scalar>
Matrix<Scalar> tangent_basis(const VectorZ& b) {
  const Eigen::Index d = b.size();
  Matrix<Scalar> bm(d, 1);
  for (Eigen::Index i = 0; i < d; ++i) bm(i, 0) = integer_cast<Scalar>(b(i));
  Eigen::HouseholderQR<Matrix<Scalar>> qr(bm);
  Matrix<Scalar> q = qr.householderQ() * Matrix<Scalar>::Identity(d, d);
  return q.rightCols(d - 1);
}

template <typename Scalar>
bool interior(const ConvexCone& c, const Vector<Scalar>& xi) {
  for (const auto& w : c.generators())
    if (!(pair<Scalar>(w, xi) > Scalar(0))) return false;
  return true;
}

struct Evaluation {
  LD value = 0;
  Vector<LD> grad;
  Matrix<LD> hess;
};

Evaluation evaluate(const IndexCharacter& ch, ReebObjective objective, const Vector<LD>& xi) {
  auto j = ch.jet<LD>(xi, 2);
  Evaluation e;
  if (objective == ReebObjective::volume) {
    e.value = j.a0;
    e.grad = j.grad_a0;
    e.hess = j.hess_a0;
    return e;
  }
  const LD p = static_cast<LD>(ch.n()) / (ch.n() + 1);
  const LD k = 16 * std::numbers::pi_v<LD> * std::pow(j.a0, -p);
  e.value = k * j.a1;
  e.grad = k * (j.grad_a1 - p * j.a1 / j.a0 * j.grad_a0);
  e.hess = k * (j.hess_a1 - p / j.a0 * (j.grad_a1 * j.grad_a0.transpose() + j.grad_a0 * j.grad_a1.transpose()) +
                p * (p + 1) * j.a1 / (j.a0 * j.a0) * j.grad_a0 * j.grad_a0.transpose() - p * j.a1 / j.a0 * j.hess_a0);
  return e;
}

/** Exact ambient gradient of the objective at a rational point, rounded at the end. */
Vector<double> exact_gradient(const IndexCharacter& ch, ReebObjective objective, const VectorQ& xi) {
  auto j = ch.jet<Rational>(xi, 1);
  if (objective == ReebObjective::volume) return to_double(j.grad_a0);
  const int n = ch.n();
  VectorQ r = j.grad_a1 - (Rational(n, n + 1) * j.a1 / j.a0) * j.grad_a0;
  const double k = 16 * std::numbers::pi * std::pow(to_double(j.a0), -static_cast<double>(n) / (n + 1));
  return k * to_double(r);
}

VectorQ snap(const Vector<LD>& xi, long den) {
  VectorQ out(xi.size());
  for (Eigen::Index i = 0; i < xi.size(); ++i) out(i) = rationalize(static_cast<double>(xi(i)), den);
  return out;
}

}  // namespace

ReebSlice::ReebSlice(ConvexCone c, VectorZ b_, const VectorQ& init) : cone(std::move(c)), b(std::move(b_)) {
  if (b.size() != cone.dimension() || init.size() != cone.dimension())
    throw DimensionError("slice covector and Reeb vector must match the cone dimension");
  if (!cone.contains_interior(to_rational(b))) throw DomainError("slice covector is not interior to the moment cone");
  if (!reeb_cone_contains(cone, init)) throw ReebMembershipError("initial Reeb vector is not in the open Reeb cone");
  level = pair<Rational>(b, init);
  xi = to_double(init);
}

Matrix<double> ReebSlice::tangent() const { return tangent_basis<double>(b); }

ReebGradient eh_reeb_gradient(const ConvexCone& c, const VectorQ& xi) {
  IndexCharacter ch(c);
  auto j = ch.jet<Rational>(xi, 1);
  const int n = ch.n();
  ReebGradient g;
  g.exact = j.grad_a1 - (Rational(n, n + 1) * j.a1 / j.a0) * j.grad_a0;
  g.covector = 16 * std::numbers::pi * std::pow(to_double(j.a0), -static_cast<double>(n) / (n + 1)) * to_double(g.exact);
  g.slice = project_to_slice(g.covector, default_slice_covector(c));
  return g;
}

std::string to_string(ReebObjective o) { return o == ReebObjective::eh ? "eh" : "volume"; }

std::string to_string(TerminationReason r) {
  switch (r) {
    case TerminationReason::converged: return "converged";
    case TerminationReason::max_iter: return "max_iter";
    case TerminationReason::line_search_failed: return "line_search_failed";
  }
  return "unknown";
}

bool OptimizationTrace::monotone() const {
  for (std::size_t i = 1; i < values.size(); ++i)
    if (values[i] > values[i - 1] + 8 * std::numeric_limits<double>::epsilon() * std::abs(values[i - 1])) return false;
  return true;
}

ReebOptimum minimize_reeb(ReebObjective objective, const ConvexCone& c, const VectorZ& b, const VectorQ& init,
                          const ReebOptions& options) {
  ReebSlice slice(c, b, init);
  IndexCharacter ch(c);
  const Matrix<LD> q = tangent_basis<LD>(b);
  const Vector<LD> bl = b.unaryExpr([](const Integer& z) { return integer_cast<LD>(z); });
  const LD level = to_long_double(slice.level);
  constexpr LD eps = std::numeric_limits<LD>::epsilon();

  Vector<LD> xi = scalar_cast<LD>(init);
  Evaluation cur = evaluate(ch, objective, xi);
  ReebOptimum out;
  auto& trace = out.trace;

  for (int it = 0;; ++it) {
    if (options.snap_every > 0 && it > 0 && it % options.snap_every == 0) {
      VectorQ xq = snap(xi, options.snap_denominator);
      Vector<LD> snapped = scalar_cast<LD>(xq);
      if (interior(c, snapped)) {
        Vector<double> exact = exact_gradient(ch, objective, xq);
        Vector<double> approx = evaluate(ch, objective, snapped).grad.cast<double>();
        const double scale = static_cast<double>(std::abs(cur.value)) / to_double(level);
        trace.snap_drift.push_back((exact - approx).norm() / std::max(exact.norm(), scale));
        // Degree-0 objectives are unchanged by the rescaling back onto the slice.
        snapped *= level / bl.dot(snapped);
        if (objective == ReebObjective::eh) {
          xi = snapped;
          cur = evaluate(ch, objective, xi);
        }
      }
    }
    Vector<LD> gs = q.transpose() * cur.grad;
    Matrix<LD> hs = q.transpose() * cur.hess * q;
    Eigen::SelfAdjointEigenSolver<Matrix<LD>> eig(hs);
    trace.iterates.push_back(xi.cast<double>());
    trace.values.push_back(static_cast<double>(cur.value));
    trace.gradient_norms.push_back(static_cast<double>(gs.norm()));
    trace.hessian_min_eigenvalues.push_back(static_cast<double>(eig.eigenvalues().minCoeff()));
    if (gs.norm() <= options.tol) {
      trace.reason = TerminationReason::converged;
      break;
    }
    if (it >= options.max_iter) {
      trace.reason = TerminationReason::max_iter;
      break;
    }
    Vector<LD> lam = eig.eigenvalues().cwiseAbs();
    const LD floor = std::max(lam.maxCoeff() * LD(1e-12), std::numeric_limits<LD>::min());
    lam = lam.cwiseMax(floor);
    Vector<LD> dir = -(q * (eig.eigenvectors() * (eig.eigenvectors().transpose() * gs).cwiseQuotient(lam)));

    bool accepted = false;
    for (LD t = 1; t > LD(1e-18); t /= 2) {
      Vector<LD> trial = xi + t * dir;
      if (!interior(c, trial)) continue;
      Evaluation next = evaluate(ch, objective, trial);
      const LD gnext = (q.transpose() * next.grad).norm();
      // Near the optimum the decrease drops below rounding; then accept on a smaller gradient.
      if (next.value < cur.value || (next.value <= cur.value + 8 * eps * std::abs(cur.value) && gnext < gs.norm())) {
        xi = trial;
        cur = std::move(next);
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      trace.reason = TerminationReason::line_search_failed;
      break;
    }
  }

  out.xi = xi.cast<double>();
  out.value = static_cast<double>(cur.value);
  out.xi_rational = snap(xi, options.snap_denominator);
  if (reeb_cone_contains(c, out.xi_rational)) {
    Vector<double> g = exact_gradient(ch, objective, out.xi_rational);
    out.exact_gradient_norm = (q.cast<double>().transpose() * g).norm();
  } else {
    out.exact_gradient_norm = std::numeric_limits<double>::infinity();
  }
  return out;
}

ReebOptimum minimize_eh_reeb(const ConvexCone& c, const VectorZ& b, const VectorQ& init, const ReebOptions& options) {
  return minimize_reeb(ReebObjective::eh, c, b, init, options);
}

ReebOptimum minimize_volume_reeb(const ConvexCone& c, const VectorZ& b, const VectorQ& init,
                                 const ReebOptions& options) {
  return minimize_reeb(ReebObjective::volume, c, b, init, options);
}

std::vector<RayRow> scan_ray(const ConvexCone& c, const VectorQ& xi, const VectorQ& zeta,
                             const std::vector<Rational>& s_grid) {
  if (xi.size() != c.dimension() || zeta.size() != c.dimension())
    throw DimensionError("Reeb vector and direction must match the cone dimension");
  IndexCharacter ch(c);
  std::vector<RayRow> rows(s_grid.size());
  parallel_for(s_grid.size(), [&](std::size_t i) {
    RayRow& row = rows[i];
    row.s = s_grid[i];
    VectorQ point = xi - row.s * zeta;
    if (!reeb_cone_contains(c, point)) return;
    auto ab = ch.coefficients(point);
    row.valid = true;
    row.a0 = ab.a0;
    row.a1 = ab.a1;
    row.eh = affine_eh(ch.n(), ab.a0, ab.a1);
  });
  return rows;
}

}  // namespace reeb
