#include "corpus.hpp"

#include <algorithm>

namespace reeb::corpus {

VectorQ q(std::initializer_list<Rational> xs) {
  VectorQ v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (const auto& x : xs) v(i++) = x;
  return v;
}

RationalPolytope interval(const Rational& a) { return RationalPolytope::box({a}); }
RationalPolytope square(const Rational& a) { return RationalPolytope::box({a, a}); }
RationalPolytope simplex2() { return RationalPolytope::from_vertices({q({0, 0}), q({2, 0}), q({0, 2})}); }
RationalPolytope hirzebruch() {
  return RationalPolytope::from_vertices({q({0, 0}), q({2, 0}), q({1, 1}), q({0, 1})});
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

std::vector<std::pair<std::string, RationalPolytope>> polytopes() {
  return {{"[0,1]", interval(1)},
          {"[0,2]", interval(2)},
          {"[0,2]^2", square(2)},
          {"[0,2]x[0,4]", RationalPolytope::box({2, 4})},
          {"simplex", simplex2()},
          {"hirzebruch", hirzebruch()}};
}

PiecewiseLinearConvex pl(std::initializer_list<std::initializer_list<Rational>> rows) {
  std::vector<AffinePiece> pieces;
  for (const auto& row : rows) {
    std::vector<Rational> r(row);
    VectorQ slope(static_cast<Eigen::Index>(r.size() - 1));
    for (std::size_t i = 0; i + 1 < r.size(); ++i) slope(i) = r[i];
    pieces.push_back(AffinePiece{slope, r.back()});
  }
  return PiecewiseLinearConvex(std::move(pieces));
}

std::vector<TestConfigEntry> testconfigs() {
  return {
      {"[0,1] max(0,2x-1)", interval(1), pl({{0, 0}, {2, -1}}), Rational(2)},
      {"[0,2]^2 max(0,x1-1)", square(2), pl({{0, 0, 0}, {1, 0, -1}}), std::nullopt},
      {"[0,2]^2 max(0,x1+x2-2)", square(2), pl({{0, 0, 0}, {1, 1, -2}}), std::nullopt},
      {"hirzebruch x1", hirzebruch(), pl({{1, 0, 0}}), std::nullopt},
      {"hirzebruch max(0,2x2-1)", hirzebruch(), pl({{0, 0, 0}, {0, 2, -1}}), std::nullopt},
  };
}

PiecewiseLinearConvex random_pl(std::mt19937& rng, const RationalPolytope& p) {
  std::uniform_int_distribution<int> pieces(1, 4), num(-6, 6), den(1, 3);
  const int n = p.dimension();
  std::vector<AffinePiece> out;
  int k = pieces(rng);
  for (int i = 0; i < k; ++i) {
    VectorQ slope(n);
    for (int j = 0; j < n; ++j) slope(j) = Rational(num(rng), den(rng));
    out.push_back({slope, Rational(num(rng), den(rng))});
  }
  // Random draws may repeat a piece; keep the first copy.
  std::vector<AffinePiece> unique;
  for (const auto& a : out)
    if (std::none_of(unique.begin(), unique.end(), [&](const AffinePiece& b) {
          return equal<Rational>(a.slope, b.slope) && a.offset == b.offset;
        }))
      unique.push_back(a);
  return PiecewiseLinearConvex(unique).pruned(p);
}

}  // namespace reeb::corpus
