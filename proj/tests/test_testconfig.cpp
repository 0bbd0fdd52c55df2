#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "corpus.hpp"
#include "reeb/testconfig.hpp"

using namespace reeb;
using corpus::pl;
using corpus::q;
using corpus::random_pl;

namespace {

bool same_vertex_set(const std::vector<VectorQ>& a, std::vector<VectorQ> b) {
  if (a.size() != b.size()) return false;
  for (const auto& v : a) {
    auto it = std::find_if(b.begin(), b.end(), [&](const VectorQ& w) { return equal<Rational>(v, w); });
    if (it == b.end()) return false;
    b.erase(it);
  }
  return true;
}

ToricTestConfig example() { return build_testconfig(corpus::interval(1), pl({{0, 0}, {2, -1}}), Rational(2)); }

}  // namespace

TEST(BuildTestConfig, RoofExample) {
  auto tc = example();
  EXPECT_TRUE(same_vertex_set(tc.roof.vertices(),
                              {q({0, 0}), q({1, 0}), q({1, 1}), q({Rational(1, 2), 2}), q({0, 2})}));
  EXPECT_EQ(tc.ceiling, 2);
  ASSERT_TRUE(tc.admissible.hi);
  EXPECT_EQ(*tc.admissible.hi, Rational(99, 200));
  EXPECT_FALSE(tc.admissible.lo);
  EXPECT_TRUE(tc.admissible.contains(Rational(0)));
  // The roof vertex (1/2, 2) has a non-unimodular cone.
  EXPECT_EQ(tc.roof_class, PolytopeClass::simplicial);
  EXPECT_TRUE(tc.warning);
}

TEST(BuildTestConfig, ProductAndAffine) {
  auto prod = build_testconfig(corpus::square(2), pl({{0, 0, 0}}), Rational(3));
  EXPECT_TRUE(same_vertex_set(prod.roof.vertices(), RationalPolytope::box({2, 2, 3}).vertices()));
  EXPECT_EQ(prod.roof_class, PolytopeClass::delzant);
  EXPECT_FALSE(prod.warning);
  auto affine = build_testconfig(corpus::interval(1), pl({{2, -1}}), Rational(2));
  EXPECT_EQ(affine.g.pieces()[0].offset, 0);
  EXPECT_EQ(affine.ceiling, 3);
  EXPECT_TRUE(same_vertex_set(affine.roof.vertices(), {q({0, 0}), q({1, 0}), q({1, 1}), q({0, 3})}));
}

TEST(BuildTestConfig, ValidationErrors) {
  auto check = [](auto&& f, const std::string& name) {
    try {
      f();
      ADD_FAILURE() << "expected " << name;
    } catch (const ValidationError& e) {
      EXPECT_EQ(e.check(), name);
    }
  };
  check([] { build_testconfig(corpus::interval(1), pl({{0, 0}, {1, -5}})); }, "redundant_piece");
  check([] { build_testconfig(corpus::interval(1), pl({{0, 0}, {0, -1}})); }, "redundant_piece");
  check([] { pl({{1, 0}, {1, 0}}); }, "duplicate_piece");
  check([] { build_testconfig(corpus::interval(1), pl({{0, 0}, {2, -1}}), Rational(1)); }, "ceiling");
  check([] { build_testconfig(corpus::square(2), pl({{0, 0}})); }, "dimension");
  check([] { build_testconfig(corpus::interval(1), pl({{0, 0}, {2, -1}}), Rational(2), 0, TestConfigMode::theorem_certified); },
        "delzant_roof");
  EXPECT_NO_THROW(build_testconfig(corpus::square(2), pl({{0, 0, 0}, {1, 0, -1}}), std::nullopt, 0,
                                   TestConfigMode::theorem_certified));
}

TEST(DfDonaldson, Examples) {
  EXPECT_EQ(df_donaldson(corpus::interval(1), pl({{1, 0}})), 0);
  EXPECT_EQ(df_donaldson(corpus::interval(1), pl({{0, 0}, {2, -1}})), Rational(1, 2));
  EXPECT_EQ(df_donaldson(corpus::hirzebruch(), pl({{1, 0, 0}})), Rational(1, 9));
  EXPECT_EQ(df_donaldson(corpus::hirzebruch(), pl({{-1, 0, 2}})), Rational(-1, 9));
}

TEST(DfDonaldson, LinearityAndAffineInvariance) {
  std::mt19937 rng(71);
  for (const auto& p : {corpus::square(2), corpus::hirzebruch(), corpus::simplex2()}) {
    for (int trial = 0; trial < 10; ++trial) {
      auto g = random_pl(rng, p);
      Rational base = df_donaldson(p, g);
      // Scaling and adding a constant.
      std::vector<AffinePiece> scaled = g.pieces(), shifted = g.pieces();
      for (auto& a : scaled) {
        a.slope *= Rational(3);
        a.offset *= 3;
      }
      for (auto& a : shifted) a.offset += Rational(5, 7);
      EXPECT_EQ(df_donaldson(p, PiecewiseLinearConvex(scaled)), 3 * base);
      EXPECT_EQ(df_donaldson(p, PiecewiseLinearConvex(shifted)), base);
      // Adding an affine function adds its (linear) invariant.
      VectorQ a = q({Rational(1, 2), Rational(-2, 3)});
      std::vector<AffinePiece> tilted = g.pieces();
      for (auto& piece : tilted) piece.slope += a;
      Rational affine = df_donaldson(p, PiecewiseLinearConvex({{a, 0}}));
      EXPECT_EQ(df_donaldson(p, PiecewiseLinearConvex(tilted)), base + affine);
    }
  }
}

TEST(DfDonaldson, SemistabilityProbe) {
  std::mt19937 rng(123);
  for (const auto& p : {corpus::interval(1), corpus::square(2), corpus::simplex2()})
    for (int trial = 0; trial < 50; ++trial) EXPECT_GE(df_donaldson(p, random_pl(rng, p)), 0);
}

TEST(DfDonaldson, InstabilityWitness) {
  EXPECT_LT(df_donaldson(corpus::hirzebruch(), pl({{-1, 0, 2}})), 0);
}

TEST(CentralIndex, ProductClosedForm) {
  auto tc = build_testconfig(corpus::interval(2), pl({{0, 0}}), Rational(1));
  auto ab = central_index_coeffs(tc, Rational(1, 4));
  EXPECT_EQ(ab.a0, Rational(32, 9));
  // a1 scales like a0 with exponent n: (perim/2)/(1 - sR)^n.
  EXPECT_EQ(ab.a1, Rational(4, 3));
  // a0 of the total cone matches vol ((1 - sR)^{-(n+1)} - 1)/(s(n+1)).
  auto total = index_coeffs(tc.total_cone, tc.total_reeb(Rational(1, 4)));
  EXPECT_EQ(total.a0, 2 * (Rational(16, 9) - 1) / (Rational(1, 4) * 2));
}

TEST(CentralIndex, AtZeroRecoversBase) {
  for (const auto& e : corpus::testconfigs()) {
    auto tc = build_testconfig(e.base, e.g, e.ceiling);
    auto ab = central_index_coeffs(tc, 0);
    EXPECT_EQ(ab.a0, e.base.volume()) << e.name;
    EXPECT_EQ(ab.a1, e.base.boundary_measure() / 2) << e.name;
  }
}

TEST(CentralIndex, OutsideAdmissibleInterval) {
  auto tc = example();
  EXPECT_THROW(central_index_coeffs(tc, Rational(1, 2)), DomainError);
  EXPECT_THROW(eh_s(tc, Rational(99, 200)), DomainError);
  EXPECT_NO_THROW(central_index_coeffs(tc, Rational(-50)));
}

TEST(CentralIndex, MuMaxReparameterization) {
  // Shifting the zeta-moment by c multiplies the base terms by (1 - s c)^{-(n+1)}, (1 - s c)^{-n}.
  auto a = build_testconfig(corpus::interval(2), pl({{0, 0}}), Rational(1), Rational(1, 3));
  auto ab = central_index_coeffs(a, Rational(1, 4));
  // Product: the central fibre sees weight R + mu_max.
  Rational c = 1 - Rational(1, 4) * Rational(4, 3);
  EXPECT_EQ(ab.a0, 2 / (c * c));
  EXPECT_EQ(ab.a1, 1 / c);
}

TEST(CentralIndex, LatticeOracle) {
  std::mt19937 rng(9);
  std::uniform_int_distribution<int> num(-20, 9);
  for (const auto& e : corpus::testconfigs()) {
    if (e.base.dimension() != 1) continue;  // lattice sums in dimension 3 only
    auto tc = build_testconfig(e.base, e.g, e.ceiling);
    const int n = tc.n();
    for (int trial = 0; trial < 5; ++trial) {
      Rational s(num(rng), 50);
      auto exact = central_index_coeffs(tc, s);
      auto lat = lattice_character(tc.total_cone, scalar_cast<double>(tc.total_reeb(s)), 0.05, 36 / 0.05);
      double vol = to_double(e.base.volume()), a1y = to_double(e.base.boundary_measure()) / 2, sd = to_double(s);
      double a0 = vol + sd * (n + 1) * lat.a0;
      double a1 = a1y - sd * n * (vol - lat.a1) - sd * sd * n * (n + 1) / 2.0 * lat.a0;
      EXPECT_NEAR(a0, to_double(exact.a0), 0.01 * to_double(exact.a0)) << to_string(s);
      EXPECT_NEAR(a1, to_double(exact.a1), 0.01 * std::abs(to_double(exact.a1))) << to_string(s);
    }
  }
}

TEST(EhS, Specializations) {
  for (const auto& e : corpus::testconfigs()) {
    auto tc = build_testconfig(e.base, e.g, e.ceiling);
    VectorQ xi0 = VectorQ::Zero(tc.n() + 1);
    xi0(tc.n()) = 1;
    EXPECT_NEAR(eh_s(tc, 0), affine_eh(cone_over(e.base), xi0), 1e-12) << e.name;
  }
  auto prod = build_testconfig(corpus::hirzebruch(), pl({{0, 0, 0}}), Rational(2));
  double base = eh_s(prod, 0);
  for (Rational s : {Rational(-3), Rational(-1, 5), Rational(1, 7), Rational(2, 5)})
    EXPECT_NEAR(eh_s(prod, s), base, 1e-12 * base);
}

TEST(EhS, RegressionValue) {
  auto ab = central_index_coeffs(example(), Rational(1, 10));
  EXPECT_EQ(ab.a0, Rational(425, 288));
  EXPECT_EQ(ab.a1, Rational(85, 72));
  EXPECT_NEAR(eh_s(example(), Rational(1, 10)), 48.849268363417288, 1e-12);
}

TEST(Slope, ProductAndSymmetric) {
  EXPECT_EQ(eh_s_slope_at_zero(build_testconfig(corpus::square(2), pl({{0, 0, 0}}))).normalized, 0);
  EXPECT_EQ(eh_s_slope_at_zero(build_testconfig(corpus::square(2), pl({{1, 0, 0}}))).normalized, 0);
  auto tc = build_testconfig(corpus::square(2), pl({{1, -1, 2}}));
  EXPECT_EQ(eh_s_slope_at_zero(tc).normalized, 0);
  // Affine g moves the Reeb vector off the scaling ray, so eh_s is stationary but not constant.
  double base = eh_s(tc, 0);
  Rational h(1, 100000);
  EXPECT_NEAR((eh_s(tc, h) - eh_s(tc, -h)) / (2 * to_double(h)), 0, 1e-6);
  EXPECT_GT(std::abs(eh_s(tc, Rational(3, 20)) - base), 1e-3);
  // [0,2], g = x, R = 3: EH_s = 8 pi sqrt(2) (1 - 2s)/sqrt((1 - 3s)(1 - s)).
  auto line = build_testconfig(corpus::interval(2), pl({{1, 0}}), Rational(3));
  for (Rational s : {Rational(-1, 2), Rational(1, 10), Rational(1, 4)}) {
    double x = to_double(s);
    double want = 8 * std::numbers::pi * std::sqrt(2.0) * (1 - 2 * x) / std::sqrt((1 - 3 * x) * (1 - x));
    EXPECT_NEAR(eh_s(line, s), want, 1e-9);
  }
}

TEST(Slope, TwoRouteDf) {
  for (const auto& e : corpus::testconfigs()) {
    auto tc = build_testconfig(e.base, e.g, e.ceiling);
    auto sl = eh_s_slope_at_zero(tc);
    Rational df = df_donaldson(e.base, e.g);
    EXPECT_EQ(sl.normalized, kappa(tc.n()) * df) << e.name;
    EXPECT_EQ(sl.stability_slope, -sl.normalized);
    if (df != 0) EXPECT_EQ(sl.stability_slope > 0, df > 0) << e.name;
    // The slope is 16 pi n DF_CS / a0^{n/(n+1)}.
    double a0 = to_double(e.base.volume());
    EXPECT_NEAR(sl.slope, 16 * std::numbers::pi * to_double(sl.normalized) / std::pow(a0, tc.n() / (tc.n() + 1.0)), 1e-12);
  }
}

TEST(Slope, MatchesFiniteDifferences) {
  for (const auto& e : corpus::testconfigs()) {
    auto tc = build_testconfig(e.base, e.g, e.ceiling);
    auto sl = eh_s_slope_at_zero(tc);
    Rational h(1, 10000);
    double fd = (eh_s(tc, h) - eh_s(tc, -h)) / (2 * to_double(h));
    EXPECT_NEAR(fd, sl.slope, 1e-6 * std::max(1.0, std::abs(sl.slope))) << e.name;
    // Exact derivatives against a rational difference quotient.
    auto d = central_index_derivatives(tc);
    Rational k(1, 1000000);
    auto up = central_index_coeffs(tc, k), dn = central_index_coeffs(tc, -k);
    EXPECT_LT(to_double((up.a0 - dn.a0) / (2 * k) - d[0]), 1e-9);
    EXPECT_LT(std::abs(to_double((up.a1 - dn.a1) / (2 * k) - d[1])), 1e-9);
  }
}

TEST(Slope, ExampleAndHirzebruchPair) {
  auto sl = eh_s_slope_at_zero(example());
  EXPECT_EQ(sl.normalized, Rational(-1, 4));
  EXPECT_GT(sl.stability_slope, 0);
  auto a = eh_s_slope_at_zero(build_testconfig(corpus::hirzebruch(), pl({{1, 0, 0}})));
  auto b = eh_s_slope_at_zero(build_testconfig(corpus::hirzebruch(), pl({{-1, 0, 2}})));
  EXPECT_EQ(a.normalized, -b.normalized);
  EXPECT_NE(a.normalized, 0);
  // Both DF forms share the derivative data; they agree when a0 = vol = 1.
  auto unit = eh_s_slope_at_zero(example());
  EXPECT_EQ(unit.df_cs, unit.df_cs_quotient);
}

TEST(VolumeLimit, Examples) {
  auto prod = build_testconfig(corpus::interval(2), pl({{0, 0}}), Rational(1));
  auto v = volume_limit_check(prod, Rational(1, 4));
  EXPECT_EQ(v.lhs, Rational(32, 9));
  EXPECT_EQ(v.discrepancy, 0);
  auto z = volume_limit_check(example(), 0);
  EXPECT_EQ(z.lhs, 1);
  EXPECT_EQ(z.rhs, 1);
  auto e = volume_limit_check(example(), Rational(1, 10));
  EXPECT_EQ(e.discrepancy, 0);
  EXPECT_LE(e.quadrature_relative_error, 1e-10);
}

TEST(VolumeLimit, CorpusFiveValues) {
  for (const auto& e : corpus::testconfigs()) {
    auto tc = build_testconfig(e.base, e.g, e.ceiling);
    const Rational hi = *tc.admissible.hi;
    for (Rational s : {Rational(-2), Rational(-1, 3), Rational(1, 9) * hi, Rational(1, 2) * hi, Rational(9, 10) * hi}) {
      auto v = volume_limit_check(tc, s);
      EXPECT_EQ(v.discrepancy, 0) << e.name << " s=" << to_string(s);
      EXPECT_LE(v.quadrature_relative_error, 1e-8) << e.name << " s=" << to_string(s);
    }
  }
}

TEST(Scan, OrderedAndConsistent) {
  auto tc = example();
  std::vector<Rational> s;
  for (int i = -10; i <= 4; ++i) s.push_back(Rational(i, 10));
  auto rows = scan(tc, s);
  ASSERT_EQ(rows.size(), s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    EXPECT_EQ(rows[i].s, s[i]);
    EXPECT_DOUBLE_EQ(rows[i].eh, eh_s(tc, s[i]));
  }
  EXPECT_THROW(scan(tc, {Rational(1)}), DomainError);
}
