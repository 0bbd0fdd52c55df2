#ifndef REEB_VERIFY_CORPUS_HPP
#define REEB_VERIFY_CORPUS_HPP

#include <random>
#include <string>
#include <vector>

#include "reeb/testconfig.hpp"

namespace reeb::corpus {

VectorQ q(std::initializer_list<Rational> xs);

RationalPolytope interval(const Rational& a);
RationalPolytope square(const Rational& a);
RationalPolytope simplex2();     // conv{(0,0),(2,0),(0,2)}
RationalPolytope hirzebruch();   // conv{(0,0),(2,0),(1,1),(0,1)}

/** Nonnegative orthant of R^d. */
ConvexCone orthant(int d);

/** Base polytopes shared by the vertical and spectral checks. */
std::vector<std::pair<std::string, RationalPolytope>> polytopes();

struct TestConfigEntry {
  std::string name;
  RationalPolytope base;
  PiecewiseLinearConvex g;
  std::optional<Rational> ceiling;
};

/** [0,1] with max(0,2x-1); [0,2]^2 with two non-affine g; Hirzebruch with affine and non-affine g. */
std::vector<TestConfigEntry> testconfigs();

/** Convex PL function from (slope..., offset) rows. */
PiecewiseLinearConvex pl(std::initializer_list<std::initializer_list<Rational>> rows);

/** Random convex PL function on p: 1 to 4 pieces with small rational coefficients, pruned. */
PiecewiseLinearConvex random_pl(std::mt19937& rng, const RationalPolytope& p);

}  // namespace reeb::corpus

#endif
