#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "reeb/index.hpp"
#include "reeb/toric_kahler.hpp"

using namespace reeb;

namespace {

VectorQ q(std::initializer_list<Rational> xs) {
  VectorQ v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (const auto& x : xs) v(i++) = x;
  return v;
}

Vector<double> d(std::initializer_list<double> xs) {
  Vector<double> v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

RationalPolytope simplex2() { return RationalPolytope::from_vertices({q({0, 0}), q({2, 0}), q({0, 2})}); }
RationalPolytope hirzebruch() {
  return RationalPolytope::from_vertices({q({0, 0}), q({2, 0}), q({1, 1}), q({0, 1})});
}

// Fourth-order centered difference of H along coordinate axes.
double fd_scalar(const SymplecticPotential& u, const Vector<double>& x, double h) {
  const int n = static_cast<int>(x.size());
  auto H = [&](const Vector<double>& y) { return u.inverse_hessian<double>(y); };
  double s = 0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      auto at = [&](int i, int j) {
        Vector<double> y = x;
        y(a) += i * h;
        y(b) += j * h;
        return H(y)(a, b);
      };
      double v;
      if (a == b) {
        auto at1 = [&](int i) {
          Vector<double> y = x;
          y(a) += i * h;
          return H(y)(a, a);
        };
        v = (-at1(2) + 16 * at1(1) - 30 * at1(0) + 16 * at1(-1) - at1(-2)) / (12 * h * h);
      } else {
        double acc = 0;
        const int c[4] = {1, -1, 2, -2};
        const double w1[4] = {8, -8, -1, 1};
        for (int i = 0; i < 4; ++i)
          for (int j = 0; j < 4; ++j) acc += w1[i] * w1[j] * at(c[i], c[j]);
        v = acc / (144 * h * h);
      }
      s -= v;
    }
  return s;
}

}  // namespace

TEST(Polarized, Examples) {
  auto a = polarized_from_polytope(RationalPolytope::box({2}));
  EXPECT_EQ(a.vol, 2);
  EXPECT_EQ(a.perim, 2);
  EXPECT_EQ(a.sbar, 2);
  auto b = polarized_from_polytope(RationalPolytope::box({2, 4}));
  EXPECT_EQ(b.vol, 8);
  EXPECT_EQ(b.perim, 12);
  EXPECT_EQ(b.sbar, 3);
  auto c = polarized_from_polytope(simplex2());
  EXPECT_EQ(c.vol, 2);
  EXPECT_EQ(c.perim, 6);
  EXPECT_EQ(c.sbar, 6);
  EXPECT_EQ(c.sbar * c.vol, 2 * c.perim);
}

TEST(Polarized, RejectsNonSimplicial) {
  // Vertex cones of the octahedron have four edges; the triangle (0,0),(2,0),(0,1) is an orbifold.
  auto oct = RationalPolytope::from_vertices(
      {q({1, 0, 0}), q({-1, 0, 0}), q({0, 1, 0}), q({0, -1, 0}), q({0, 0, 1}), q({0, 0, -1})});
  EXPECT_THROW(polarized_from_polytope(oct), DomainError);
  auto tri = polarized_from_polytope(RationalPolytope::from_vertices({q({0, 0}), q({2, 0}), q({0, 1})}));
  EXPECT_EQ(tri.classification, PolytopeClass::simplicial);
  EXPECT_EQ(tri.vol, 1);
}

TEST(Abreu, Examples) {
  for (double x : {0.01, 0.3, 1.0, 1.9}) EXPECT_NEAR(abreu_scalar(RationalPolytope::box({2}), d({x})), 2, 1e-10);
  for (double x : {0.2, 1.0, 1.7})
    EXPECT_NEAR(abreu_scalar(RationalPolytope::box({2, 2}), d({x, 2 - x / 2})), 4, 1e-9);
  EXPECT_NEAR(abreu_scalar(simplex2(), d({2.0 / 3, 2.0 / 3})), 6, 1e-10);
  // The Guillemin metric on a Delzant simplex is Fubini-Study, so S is constant.
  EXPECT_NEAR(abreu_scalar(simplex2(), d({0.1, 1.5})), 6, 1e-9);
}

TEST(Abreu, DomainErrors) {
  EXPECT_THROW(abreu_scalar(RationalPolytope::box({2}), d({0.0})), DomainError);
  EXPECT_THROW(abreu_scalar(RationalPolytope::box({2}), d({2.5})), DomainError);
  EXPECT_THROW(abreu_scalar(simplex2(), d({1.0, 1.0})), DomainError);
}

TEST(Abreu, MatchesFiniteDifferencesOfH) {
  SymplecticPotential u(hirzebruch());
  for (auto x : {d({0.5, 0.5}), d({1.2, 0.3}), d({0.2, 0.8})}) {
    auto pt = u.at<double>(x);
    EXPECT_NEAR(pt.scalar_curvature, fd_scalar(u, x, 1e-3), 1e-6);
    EXPECT_EQ(pt.H.llt().info(), Eigen::Success);
  }
}

TEST(Abreu, DivergenceMatchesFiniteDifferences) {
  SymplecticPotential u(hirzebruch());
  Vector<long double> x(2);
  x << 0.7L, 0.4L;
  auto pt = u.at<long double>(x);
  const long double h = 1e-5L;
  for (int j = 0; j < 2; ++j) {
    long double div = 0;
    for (int i = 0; i < 2; ++i) {
      Vector<long double> p = x, m = x;
      p(i) += h;
      m(i) -= h;
      div += (u.inverse_hessian<long double>(p)(i, j) - u.inverse_hessian<long double>(m)(i, j)) / (2 * h);
    }
    EXPECT_NEAR(static_cast<double>(pt.div_H(j)), static_cast<double>(div), 1e-8);
  }
}

TEST(Abreu, BoundaryDegeneration) {
  SymplecticPotential u(hirzebruch());
  // Facet x_2 = 0 has normal (0,1): H v -> 0 on approach.
  for (double eps : {1e-2, 1e-4, 1e-6}) {
    auto H = u.inverse_hessian<double>(d({0.9, eps}));
    EXPECT_LT((H * d({0, 1})).norm(), 10 * eps);
  }
}

TEST(Abreu, DonaldsonIdentity) {
  for (const auto& p : {RationalPolytope::box({2}), RationalPolytope::box({2, 4}), simplex2(), hirzebruch(),
                        RationalPolytope::box({1, 2, 3})}) {
    ToricGrid g = ToricGrid::build(p, p.dimension() == 3 ? 16 : 48);
    EXPECT_NEAR(g.integrate(g.S), 2 * to_double(p.boundary_measure()), 1e-8);
  }
}

TEST(Quadrature, IntegratesPolynomialsExactly) {
  auto p = hirzebruch();
  auto rule = polytope_rule<double>(p, 8);
  EXPECT_NEAR(rule.weights.sum(), 1.5, 1e-14);
  double xy = 0;
  for (Eigen::Index k = 0; k < rule.size(); ++k) xy += rule.weights(k) * rule.nodes(0, k) * rule.nodes(1, k);
  // int over {0<=y<=1, 0<=x<=2-y} of x y = int_0^1 y (2-y)^2/2 dy = 11/24
  EXPECT_NEAR(xy, 11.0 / 24, 1e-14);
  auto b = boundary_rule<double>(p, 4);
  EXPECT_NEAR(b.weights.sum(), 5, 1e-14);
  auto b1 = boundary_rule<double>(RationalPolytope::box({2}), 4);
  EXPECT_NEAR(b1.weights.sum(), 2, 1e-15);
}

TEST(Spectrum, BoxExamples) {
  auto a = invariant_lambda1(RationalPolytope::box({2}));
  ASSERT_TRUE(a.exact);
  EXPECT_EQ(*a.exact, 2);
  EXPECT_EQ(*invariant_lambda1(RationalPolytope::box({2, 12})).exact, Rational(1, 3));
  EXPECT_EQ(*invariant_lambda1(RationalPolytope::box({2, 4})).exact, 1);
  auto s = box_spectrum({2, 4}, 4);
  std::vector<Rational> want{1, 2, 3, 3};
  EXPECT_EQ(s, want);
}

TEST(Spectrum, UpperBound) {
  for (int alpha = 1; alpha <= 4; ++alpha)
    for (int beta = 1; beta <= 4; ++beta) {
      auto l = invariant_lambda1(RationalPolytope::box({2 * alpha, 2 * beta}));
      EXPECT_LE(*l.exact, Rational(2, alpha));
    }
}

TEST(Spectrum, RitzMatchesLegendreOnBoxes) {
  for (const auto& sides : {std::vector<Rational>{2}, std::vector<Rational>{2, 4}, std::vector<Rational>{2, 12}}) {
    auto p = RationalPolytope::box(sides);
    auto exact = box_spectrum(sides, 3);
    ToricGrid g = ToricGrid::build(p, 24);
    auto pairs = ritz_pairs(g, PolynomialBasis(g, 6));
    for (int i = 0; i < 3; ++i) EXPECT_NEAR(pairs.values(i), to_double(exact[i]), 1e-9);
  }
}

TEST(Spectrum, ConvergesFromAbove) {
  for (const auto& p : {hirzebruch(), simplex2()}) {
    ToricGrid g = ToricGrid::build(p, 40);
    double prev = INFINITY;
    for (int deg = 1; deg <= 10; ++deg) {
      double l = ritz_pairs(g, PolynomialBasis(g, deg)).values(0);
      EXPECT_LE(l, prev + 1e-10);
      prev = l;
    }
    EXPECT_NEAR(invariant_lambda1(p, {40, 10}).value, prev, 1e-12);
  }
}

TEST(Spectrum, LinearModesOnSimplex) {
  // Moment coordinates are eigenfunctions of the Fubini-Study Laplacian.
  ToricGrid g = ToricGrid::build(simplex2(), 32);
  double l1 = ritz_pairs(g, PolynomialBasis(g, 1)).values(0);
  double l8 = ritz_pairs(g, PolynomialBasis(g, 8)).values(0);
  EXPECT_NEAR(l1, l8, 1e-9);
  EXPECT_NEAR(l1, 3, 1e-9);
}

TEST(Spectrum, RejectsNonDelzant) {
  auto p = RationalPolytope::from_vertices({q({0, 0}), q({2, 0}), q({0, 1})});
  EXPECT_THROW(invariant_lambda1(p), DomainError);
}

TEST(SliceIdentity, MatchesFanOracle) {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> num(-3, 3);
  for (const auto& p : {RationalPolytope::box({2}), RationalPolytope::box({2, 2}), simplex2(), hirzebruch()}) {
    const int n = p.dimension();
    ConvexCone c = cone_over(p);
    int checked = 0;
    for (int trial = 0; trial < 6; ++trial) {
      VectorQ zeta(n);
      for (int i = 0; i < n; ++i) zeta(i) = Rational(num(rng), 2);
      Rational s(1, 5);
      VectorQ xi = VectorQ::Zero(n + 1);
      xi.head(n) = -s * zeta;
      xi(n) = 1;
      if (!reeb_cone_contains(c, xi)) continue;
      ++checked;
      auto ab = index_coeffs(c, xi);
      VectorQ slope = -s * zeta;
      EXPECT_EQ(ab.a0, oracle::integral_affine_power(p, slope, 1));
      EXPECT_EQ(ab.a1, oracle::boundary_integral_affine_power(p, slope, 1) / 2);
    }
    EXPECT_GT(checked, 2);
  }
}

TEST(SliceIdentity, ConeOverExamples) {
  auto c = cone_over(RationalPolytope::box({2}));
  ASSERT_EQ(c.generators().size(), 2u);
  EXPECT_EQ(c.generators()[0], (VectorZ(2) << 0, 1).finished());
  EXPECT_EQ(c.generators()[1], (VectorZ(2) << 2, 1).finished());
  auto ab = index_coeffs(c, q({0, 1}));
  EXPECT_EQ(ab.a0, 2);
  EXPECT_EQ(ab.a1, 1);
}
