#ifndef REEB_VERIFY_ORACLES_HPP
#define REEB_VERIFY_ORACLES_HPP

// Independent reference computations used by the tests and the verify suites.

#include <vector>

#include "reeb/polyhedral.hpp"

namespace reeb::oracle {

/**
 * Laurent coefficients c_{-d}, ..., c_{-d+terms-1} in t of prod_j 1/(1 - exp(-t x_j)),
 * the Hilbert series of a unimodular simplicial cone with pairings x_j = <w_j, xi>.
 */
std::vector<Rational> hilbert_laurent(const std::vector<Rational>& pairings, int terms);

/** (a0, a1) read off the Laurent expansion: a0 = c_{-(n+1)}/n!, a1 = c_{-n}/(n-1)!. */
std::pair<Rational, Rational> hilbert_pole_coefficients(const std::vector<Rational>& pairings);

/** Closed form of prod_j 1/(1 - exp(-t x_j)) in long double. */
long double hilbert_product(const std::vector<double>& pairings, double t);

/**
 * Exact integral of 1/prod(affine) over P: int_P f^{-(n+1)} dx for affine f > 0, using
 * int_simplex f^{-(n+1)} = vol / prod f(vertex). Independent of the cone triangulation:
 * P is fanned from its first vertex over the facets not containing it.
 */
Rational integral_affine_power(const RationalPolytope& p, const VectorQ& slope, const Rational& constant);

/** int_{dP} f^{-n} dsigma, lattice-normalized, for affine f > 0, by the same fan construction. */
Rational boundary_integral_affine_power(const RationalPolytope& p, const VectorQ& slope, const Rational& constant);

}  // namespace reeb::oracle

#endif
