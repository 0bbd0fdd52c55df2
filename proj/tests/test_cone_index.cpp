#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "reeb/index.hpp"

using namespace reeb;

namespace {

VectorQ q(std::initializer_list<Rational> xs) {
  VectorQ v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (const auto& x : xs) v(i++) = x;
  return v;
}

ConvexCone orthant(int d) {
  std::vector<VectorZ> g;
  for (int i = 0; i < d; ++i) {
    VectorZ e = VectorZ::Zero(d);
    e(i) = 1;
    g.push_back(e);
  }
  return ConvexCone::from_generators(g);
}

RationalPolytope hirzebruch() {
  return RationalPolytope::from_vertices({q({0, 0}), q({2, 0}), q({1, 1}), q({0, 1})});
}

VectorQ random_reeb(std::mt19937& rng, int d) {
  std::uniform_int_distribution<int> num(1, 40), den(1, 17);
  VectorQ v(d);
  for (int i = 0; i < d; ++i) v(i) = Rational(num(rng), den(rng));
  return v;
}

}  // namespace

TEST(ReebCone, Membership) {
  auto c = orthant(2);
  EXPECT_TRUE(reeb_cone_contains(c, q({1, 1})));
  EXPECT_FALSE(reeb_cone_contains(c, q({1, 0})));
  EXPECT_FALSE(reeb_cone_contains(c, q({-1, 3})));
  EXPECT_THROW(reeb_cone_contains(c, q({1, 1, 1})), DimensionError);
}

TEST(IndexCoeffs, Examples) {
  auto a = index_coeffs(orthant(2), q({1, 1}));
  EXPECT_EQ(a.a0, 1);
  EXPECT_EQ(a.a1, 1);
  a = index_coeffs(orthant(2), q({1, 2}));
  EXPECT_EQ(a.a0, Rational(1, 2));
  EXPECT_EQ(a.a1, Rational(3, 4));
  a = index_coeffs(orthant(3), q({1, 1, 1}));
  EXPECT_EQ(a.a0, Rational(1, 2));
  EXPECT_EQ(a.a1, Rational(3, 2));
  EXPECT_THROW(index_coeffs(orthant(2), q({1, 0})), ReebMembershipError);
}

TEST(IndexCoeffs, ConeOverPolytopes) {
  auto a = index_coeffs(cone_over(RationalPolytope::box({2})), q({0, 1}));
  EXPECT_EQ(a.a0, 2);
  EXPECT_EQ(a.a1, 1);
  a = index_coeffs(cone_over(RationalPolytope::box({2, 2})), q({0, 0, 1}));
  EXPECT_EQ(a.a0, 4);
  EXPECT_EQ(a.a1, 4);
  a = index_coeffs(cone_over(hirzebruch()), q({0, 0, 1}));
  EXPECT_EQ(a.a0, Rational(3, 2));
  EXPECT_EQ(a.a1, Rational(5, 2));
}

TEST(IndexCoeffs, HilbertSeriesOracle) {
  std::mt19937 rng(11);
  for (int d = 2; d <= 4; ++d) {
    auto c = orthant(d);
    for (int trial = 0; trial < 20; ++trial) {
      VectorQ xi = random_reeb(rng, d);
      std::vector<Rational> pairings(xi.data(), xi.data() + d);
      auto expected = oracle::hilbert_pole_coefficients(pairings);
      auto got = index_coeffs(c, xi);
      EXPECT_EQ(got.a0, expected.first);
      EXPECT_EQ(got.a1, expected.second);
    }
  }
  // A unimodular, non-orthant simplicial cone.
  std::vector<VectorZ> gens(3, VectorZ(3));
  gens[0] << 1, 0, 0;
  gens[1] << 1, 1, 0;
  gens[2] << 1, 1, 1;
  auto c = ConvexCone::from_generators(gens);
  for (int trial = 0; trial < 20; ++trial) {
    VectorQ xi = random_reeb(rng, 3);
    std::vector<Rational> pairings;
    for (const auto& w : gens) pairings.push_back(pair<Rational>(w, xi));
    auto expected = oracle::hilbert_pole_coefficients(pairings);
    auto got = index_coeffs(c, xi);
    EXPECT_EQ(got.a0, expected.first);
    EXPECT_EQ(got.a1, expected.second);
  }
}

TEST(IndexCoeffs, Homogeneity) {
  std::mt19937 rng(3);
  auto c = cone_over(hirzebruch());
  for (int trial = 0; trial < 10; ++trial) {
    VectorQ xi = q({0, 0, 4}) + random_reeb(rng, 3) / 20;
    Rational lambda = Rational(static_cast<int>(rng() % 9 + 1), static_cast<int>(rng() % 7 + 1));
    auto a = index_coeffs(c, xi), b = index_coeffs(c, VectorQ(lambda * xi));
    EXPECT_EQ(b.a0, a.a0 / (lambda * lambda * lambda));
    EXPECT_EQ(b.a1, a.a1 / (lambda * lambda));
    EXPECT_NEAR(affine_eh(c, xi), affine_eh(c, VectorQ(lambda * xi)), 1e-12 * affine_eh(c, xi));
  }
}

TEST(IndexCoeffs, TriangulationIndependence) {
  // Same cone, generators listed in a different order and with non-primitive duplicates.
  std::vector<VectorZ> g1, g2;
  const ConvexCone base = cone_over(hirzebruch());
  for (const auto& v : base.generators()) g1.push_back(v);
  for (auto it = g1.rbegin(); it != g1.rend(); ++it) g2.push_back(VectorZ(*it * Integer(3)));
  auto c1 = ConvexCone::from_generators(g1), c2 = ConvexCone::from_generators(g2);
  VectorQ xi = q({Rational(1, 3), Rational(-1, 5), 2});
  auto a = index_coeffs(c1, xi), b = index_coeffs(c2, xi);
  EXPECT_EQ(a.a0, b.a0);
  EXPECT_EQ(a.a1, b.a1);
  // A different triangulation: fan the pentagon from a different apex.
  auto p = RationalPolytope::from_vertices({q({0, 0}), q({3, 0}), q({3, 1}), q({1, 2}), q({0, 2})});
  VectorQ slope = q({Rational(1, 7), Rational(-1, 9)});
  Rational constant = 1;
  VectorQ xi2(3);
  xi2 << slope(0), slope(1), constant;
  auto c = index_coeffs(cone_over(p), xi2);
  EXPECT_EQ(c.a0, oracle::integral_affine_power(p, slope, constant));
  EXPECT_EQ(c.a1, oracle::boundary_integral_affine_power(p, slope, constant) / 2);
}

TEST(IndexCoeffsDerivative, Examples) {
  auto c = orthant(2);
  auto d = index_coeffs_derivative(c, q({1, 1}), q({0, 1}), 1);
  EXPECT_EQ(d[0], 1);
  EXPECT_EQ(d[1], Rational(1, 2));
  // The closed forms a0(s) = 1/(2-s), a1(s) = (3-s)/(2(2-s)) give (1/4, 1/8).
  d = index_coeffs_derivative(c, q({1, 2}), q({0, 1}), 1);
  EXPECT_EQ(d[0], Rational(1, 4));
  EXPECT_EQ(d[1], Rational(1, 8));
  // Euler relation.
  VectorQ xi = q({2, 5});
  auto a = index_coeffs(c, xi);
  d = index_coeffs_derivative(c, xi, xi, 1);
  EXPECT_EQ(d[0], 2 * a.a0);
  EXPECT_EQ(d[1], a.a1);
  auto c3 = cone_over(hirzebruch());
  VectorQ x3 = q({1, Rational(1, 2), 3});
  auto a3 = index_coeffs(c3, x3);
  auto d3 = index_coeffs_derivative(c3, x3, x3, 1);
  EXPECT_EQ(d3[0], 3 * a3.a0);
  EXPECT_EQ(d3[1], 2 * a3.a1);
}

// Central differences at s = +-1/1024 agree with the exact first derivative up to the
// rigorous Taylor remainder (h^2/6) max|f'''| on [-h, h].
TEST(IndexCoeffsDerivative, FiniteDifferenceWithRemainderBound) {
  const Rational h(1, 1024);
  std::mt19937 rng(5);
  for (const auto& c : {orthant(3), cone_over(hirzebruch()), cone_over(RationalPolytope::box({2, 2}))}) {
    IndexCharacter ch(c);
    for (int trial = 0; trial < 5; ++trial) {
      VectorQ xi = VectorQ::Zero(3);
      for (const auto& w : c.generators()) xi += to_rational(w) / 4;
      xi += random_reeb(rng, 3) / 50;
      VectorQ zeta = random_reeb(rng, 3) / 20 - q({1, 1, 1});
      auto plus = ch.coefficients(VectorQ(xi - h * zeta));
      auto minus = ch.coefficients(VectorQ(xi + h * zeta));
      auto d1 = ch.directional<Rational>(xi, zeta, 1);
      Rational fd0 = (plus.a0 - minus.a0) / (2 * h), fd1 = (plus.a1 - minus.a1) / (2 * h);
      auto bound = [&](const std::vector<IndexCharacter::Term>& terms) {
        Rational total = 0;
        for (const auto& t : terms) {
          Rational f = t.weight, r1 = 0, r2 = 0, r3 = 0;
          for (const auto& w : t.gens) {
            Rational p = pair<Rational>(w, xi), qv = abs(pair<Rational>(w, zeta));
            Rational pmin = p - h * qv;
            EXPECT_GT(pmin, 0);
            f /= pmin;
            Rational r = qv / pmin;
            r1 += r;
            r2 += r * r;
            r3 += r * r * r;
          }
          total += f * (r1 * r1 * r1 + 3 * r1 * r2 + 2 * r3);
        }
        return h * h / 6 * total;
      };
      EXPECT_LE(abs(fd0 - d1[0]), bound(ch.volume_terms()));
      EXPECT_LE(abs(fd1 - d1[1]), bound(ch.boundary_terms()));
      EXPECT_NE(fd0, d1[0]);
    }
  }
}

TEST(IndexCoeffsDerivative, JetMatchesDirectional) {
  auto c = cone_over(hirzebruch());
  IndexCharacter ch(c);
  VectorQ xi = q({Rational(1, 2), Rational(1, 3), 3});
  VectorQ zeta = q({1, -2, Rational(1, 2)});
  auto jet = ch.jet<Rational>(xi);
  auto d1 = ch.directional<Rational>(xi, zeta, 1);
  auto d2 = ch.directional<Rational>(xi, zeta, 2);
  // d/ds a(xi - s zeta) = -grad . zeta; second derivative = zeta^T H zeta.
  EXPECT_EQ(d1[0], -dot<Rational>(jet.grad_a0, zeta));
  EXPECT_EQ(d1[1], -dot<Rational>(jet.grad_a1, zeta));
  EXPECT_EQ(d2[0], dot<Rational>(zeta, VectorQ(jet.hess_a0 * zeta)));
  EXPECT_EQ(d2[1], dot<Rational>(zeta, VectorQ(jet.hess_a1 * zeta)));
  auto jd = ch.jet<double>(to_double(xi));
  EXPECT_NEAR(jd.a0, to_double(jet.a0), 1e-14);
  EXPECT_NEAR(jd.hess_a1(0, 1), to_double(jet.hess_a1(0, 1)), 1e-12);
  auto err = ch.relative_error_bound(to_double(xi));
  EXPECT_LE(std::abs(jd.a0 - to_double(jet.a0)), err[0] * std::abs(jd.a0));
  EXPECT_LE(std::abs(jd.a1 - to_double(jet.a1)), err[1] * std::abs(jd.a1));
}

TEST(AffineEH, Examples) {
  auto c = orthant(2);
  EXPECT_NEAR(affine_eh(c, q({1, 1})), 16 * std::numbers::pi, 1e-12);
  EXPECT_NEAR(affine_eh(c, q({2, 2})), 16 * std::numbers::pi, 1e-12);
  EXPECT_NEAR(affine_eh(c, q({1, 2})), 12 * std::sqrt(2.0) * std::numbers::pi, 1e-12);
}

TEST(DFCS, ExamplesAndBothForms) {
  auto c = orthant(2);
  EXPECT_EQ(df_cs(c, q({1, 1}), q({0, 1})), 0);
  EXPECT_EQ(df_cs(c, q({1, 2}), q({0, 1})), Rational(-1, 16));
  EXPECT_EQ(df_cs(c, q({3, 7}), q({3, 7})), 0);
  // The quotient form agrees with the primary form exactly when a0(xi) = 1.
  std::mt19937 rng(9);
  for (const auto& cone : {orthant(2), orthant(3), cone_over(hirzebruch())}) {
    IndexCharacter ch(cone);
    const int n = ch.n();
    for (int trial = 0; trial < 10; ++trial) {
      VectorQ xi = VectorQ::Zero(cone.dimension());
      for (const auto& w : cone.generators()) xi += to_rational(w);
      xi += random_reeb(rng, cone.dimension()) / 10;
      VectorQ zeta = random_reeb(rng, cone.dimension()) - random_reeb(rng, cone.dimension());
      auto v = ch.coefficients(xi);
      auto d = ch.directional<Rational>(xi, zeta, 1);
      Rational gap = df_cs_quotient_form(n, v.a0, v.a1, d[0], d[1]) - df_cs(n, v.a0, v.a1, d[0], d[1]);
      EXPECT_EQ(gap, v.a1 * d[0] / (n * (n + 1)) * (1 - 1 / v.a0));
    }
  }
  VectorQ unit = q({1, 1});
  EXPECT_EQ(df_cs(c, unit, q({2, -1})), df_cs_quotient_form(c, unit, q({2, -1})));
}

TEST(DFCS, SlopeIdentity) {
  // d/ds EH^a(xi - s zeta) at 0 from the exact derivative formula vs 16 pi n DF / a0^{n/(n+1)},
  // and vs a high-order finite difference in double.
  std::mt19937 rng(21);
  for (const auto& c : {orthant(2), orthant(3), cone_over(hirzebruch())}) {
    IndexCharacter ch(c);
    const int n = ch.n();
    for (int trial = 0; trial < 5; ++trial) {
      VectorQ xi = VectorQ::Zero(c.dimension());
      for (const auto& w : c.generators()) xi += to_rational(w);
      xi += random_reeb(rng, c.dimension()) / 10;
      VectorQ zeta = random_reeb(rng, c.dimension()) / 10 - random_reeb(rng, c.dimension()) / 10;
      auto v = ch.coefficients(xi);
      auto d = ch.directional<Rational>(xi, zeta, 1);
      Rational df = df_cs(n, v.a0, v.a1, d[0], d[1]);
      double slope = affine_eh_slope(n, v.a0, df);
      double e = static_cast<double>(n) / (n + 1);
      double a0 = to_double(v.a0), a1 = to_double(v.a1);
      double direct = 16 * std::numbers::pi *
                      (to_double(d[1]) / std::pow(a0, e) - e * a1 * to_double(d[0]) / std::pow(a0, e + 1));
      EXPECT_NEAR(slope, direct, 1e-12 * (1 + std::abs(direct)));
      const double hs = 1e-3;
      auto eh = [&](double s) {
        Vector<double> x = to_double(xi) - s * to_double(zeta);
        auto j = ch.jet<double>(x, 0);
        return 16 * std::numbers::pi * j.a1 / std::pow(j.a0, e);
      };
      double fd = (-eh(2 * hs) + 8 * eh(hs) - 8 * eh(-hs) + eh(-2 * hs)) / (12 * hs);
      EXPECT_NEAR(slope, fd, 1e-8 * (1 + std::abs(slope)));
    }
  }
}

TEST(LatticeCharacter, Examples) {
  auto c2 = orthant(2);
  Vector<double> one2 = Vector<double>::Ones(2);
  double f = lattice_sum(c2, one2, 0.5, 60);
  double expected = std::pow(1.0 / (1.0 - std::exp(-0.5)), 2);
  EXPECT_NEAR(f, expected, 1e-10);
  double t = 0.01;
  double g = t * t * lattice_sum(c2, one2, t, 4000);
  EXPECT_NEAR(g, std::pow(t / -std::expm1(-t), 2), 1e-10);
  EXPECT_NEAR(g, 1.0100418, 1e-7);
  auto c3 = orthant(3);
  Vector<double> one3 = Vector<double>::Ones(3);
  t = 0.05;
  double g3 = std::pow(t, 3) * lattice_sum(c3, one3, t, 800) / 2;
  EXPECT_NEAR(g3, static_cast<double>(oracle::hilbert_product({1, 1, 1}, t)) * std::pow(t, 3) / 2, 1e-10);
  EXPECT_NEAR(g3, 0.538773, 1e-6);
}

TEST(LatticeCharacter, ExtrapolationWithinOnePercent) {
  for (double t : {0.05, 0.025}) {
    auto r2 = lattice_character(orthant(2), Vector<double>::Ones(2), t, 36 / t);
    EXPECT_NEAR(r2.a0, 1.0, 0.01);
    EXPECT_NEAR(r2.a1, 1.0, 0.01);
    EXPECT_FALSE(r2.truncation_warning);
    auto r3 = lattice_character(orthant(3), Vector<double>::Ones(3), t, 36 / t);
    EXPECT_NEAR(r3.a0, 0.5, 0.005);
    EXPECT_NEAR(r3.a1, 1.5, 0.015);
  }
}

TEST(LatticeCharacter, MonotoneInCutoffAndFlagsTruncation) {
  auto c = cone_over(hirzebruch());
  Vector<double> xi(3);
  xi << 0.1, -0.05, 1.0;
  double prev = 0;
  for (double k : {5.0, 10.0, 20.0, 40.0}) {
    double f = lattice_sum(c, xi, 0.3, k);
    EXPECT_GE(f, prev);
    prev = f;
  }
  EXPECT_TRUE(lattice_character(c, xi, 0.3, 20).truncation_warning);
  EXPECT_THROW(lattice_sum(c, Vector<double>::Ones(3) * -1, 0.3, 10), ReebMembershipError);
}

TEST(LatticeCharacter, GeneralConeMatchesExactCoefficients) {
  auto c = cone_over(hirzebruch());
  VectorQ xi = q({Rational(1, 10), Rational(-1, 20), 1});
  auto exact = index_coeffs(c, xi);
  auto r = lattice_character(c, to_double(xi), 0.05, 36 / 0.05);
  EXPECT_NEAR(r.a0, to_double(exact.a0), 0.01 * to_double(exact.a0));
  EXPECT_NEAR(r.a1, to_double(exact.a1), 0.01 * to_double(exact.a1));
}
