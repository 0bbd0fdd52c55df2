#ifndef REEB_VERIFY_FD_CHECKS_HPP
#define REEB_VERIFY_FD_CHECKS_HPP

#include <random>

#include "reeb/vertical.hpp"

namespace reeb::oracle {

/** a + sum_i b_i sin(c_i x_i + d_i) + e x_0 x_{n-1}, coefficients drawn from rng. */
SmoothFunction random_direction(std::mt19937& rng, int n);

/** f + e delta. */
SmoothFunction perturb(const SmoothFunction& f, const SmoothFunction& delta, double e);

struct FdComparison {
  double analytic = 0;
  double coarse = 0;  // difference quotient at h = 1e-3
  double fine = 0;    // at h = 1e-4
  double coarse_error() const;
  double fine_error() const;
  double relative_error() const;  // fine error / max(|analytic|, 1)
  /** Second order: the error shrinks by at least 10^1.5, or the fine error sits at the rounding floor. */
  bool second_order(double floor = 1e-10) const;
};

/** int eh_gradient(f) delta dx against centered differences of EH(f + h delta). */
FdComparison gradient_fd(std::shared_ptr<const ToricGrid> grid, const SmoothFunction& f, const SmoothFunction& delta);

/** hessian_form(delta - mean, C) at f = 1 against second differences of EH(1 + h delta). */
FdComparison hessian_fd(std::shared_ptr<const ToricGrid> grid, const SmoothFunction& delta, double c);

/** int eh_pq_gradient(f) delta dx against centered differences of eh_pq. */
FdComparison eh_pq_fd(std::shared_ptr<const ToricGrid> grid, const SmoothFunction& f, const SmoothFunction& delta,
                      double p, double q);

}  // namespace reeb::oracle

#endif
