#include "oracles.hpp"

#include <algorithm>
#include <cmath>

namespace reeb::oracle {

namespace {

// x / (1 - e^{-x}) = sum_k b_k x^k.
std::vector<Rational> bernoulli_series(int terms) {
  // b satisfies b(x) * (1 - e^{-x})/x = 1, and (1 - e^{-x})/x = sum_k (-1)^k x^k/(k+1)!.
  std::vector<Rational> e(terms), b(terms);
  for (int k = 0; k < terms; ++k) e[k] = Rational(k % 2 ? -1 : 1) / factorial(k + 1);
  for (int k = 0; k < terms; ++k) {
    Rational s = 0;
    for (int j = 0; j < k; ++j) s += b[j] * e[k - j];
    b[k] = -s;
    if (k == 0) b[k] = 1;
  }
  return b;
}

}  // namespace

std::vector<Rational> hilbert_laurent(const std::vector<Rational>& pairings, int terms) {
  std::vector<Rational> b = bernoulli_series(terms);
  std::vector<Rational> poly(terms, Rational(0));
  poly[0] = 1;
  Rational scale = 1;
  for (const auto& x : pairings) {
    scale /= x;
    std::vector<Rational> next(terms, Rational(0));
    Rational xp = 1;
    std::vector<Rational> factor(terms);
    for (int k = 0; k < terms; ++k) {
      factor[k] = b[k] * xp;
      xp *= x;
    }
    for (int i = 0; i < terms; ++i)
      for (int j = 0; i + j < terms; ++j) next[i + j] += poly[i] * factor[j];
    poly = next;
  }
  for (auto& c : poly) c *= scale;
  return poly;
}

std::pair<Rational, Rational> hilbert_pole_coefficients(const std::vector<Rational>& pairings) {
  const int n = static_cast<int>(pairings.size()) - 1;
  auto c = hilbert_laurent(pairings, 2);
  return {c[0] / factorial(n), c[1] / factorial(n - 1)};
}

long double hilbert_product(const std::vector<double>& pairings, double t) {
  long double p = 1;
  for (double x : pairings) p /= -std::expm1(-static_cast<long double>(t) * x);
  return p;
}

namespace {

Rational affine(const VectorQ& slope, const Rational& constant, const VectorQ& x) {
  return dot<Rational>(slope, x) + constant;
}

// Fan triangulation of a face given by vertex indices: cone from the first vertex over the
// sub-faces (intersections with facets of P) that avoid it.
void fan(const RationalPolytope& p, const IndexSet& face, int dim, std::vector<IndexSet>& out) {
  if (static_cast<int>(face.size()) == dim + 1) {
    out.push_back(face);
    return;
  }
  const std::size_t apex = face.back();
  std::vector<IndexSet> subs;
  for (std::size_t k = 0; k < p.facets().size(); ++k) {
    IndexSet g;
    for (auto v : face)
      if (p.facet_value<Rational>(k, p.vertices()[v]) == 0) g.push_back(v);
    if (g.size() == face.size() || std::find(g.begin(), g.end(), apex) != g.end()) continue;
    // Affine dimension of g must be dim - 1.
    if (g.size() < static_cast<std::size_t>(dim)) continue;
    MatrixQ m(p.dimension(), static_cast<Eigen::Index>(g.size()) - 1);
    for (std::size_t j = 1; j < g.size(); ++j) m.col(j - 1) = p.vertices()[g[j]] - p.vertices()[g[0]];
    if (rank<Rational>(m) != dim - 1) continue;
    if (std::find(subs.begin(), subs.end(), g) == subs.end()) subs.push_back(g);
  }
  for (const auto& g : subs) {
    std::vector<IndexSet> part;
    fan(p, g, dim - 1, part);
    for (auto s : part) {
      s.push_back(apex);
      out.push_back(s);
    }
  }
}

}  // namespace

Rational integral_affine_power(const RationalPolytope& p, const VectorQ& slope, const Rational& constant) {
  const int n = p.dimension();
  IndexSet all(p.vertices().size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  std::vector<IndexSet> simplices;
  fan(p, all, n, simplices);
  Rational total = 0;
  for (const auto& s : simplices) {
    std::vector<VectorQ> pts;
    Rational prod = 1;
    for (auto v : s) {
      pts.push_back(p.vertices()[v]);
      prod *= affine(slope, constant, p.vertices()[v]);
    }
    total += simplex_volume(pts) / prod;
  }
  return total;
}

Rational boundary_integral_affine_power(const RationalPolytope& p, const VectorQ& slope, const Rational& constant) {
  const int n = p.dimension();
  Rational total = 0;
  for (std::size_t k = 0; k < p.facets().size(); ++k) {
    IndexSet face;
    for (std::size_t v = 0; v < p.vertices().size(); ++v)
      if (p.facet_value<Rational>(k, p.vertices()[v]) == 0) face.push_back(v);
    std::vector<IndexSet> simplices;
    fan(p, face, n - 1, simplices);
    for (const auto& s : simplices) {
      std::vector<VectorQ> pts;
      Rational prod = 1;
      for (auto v : s) {
        pts.push_back(p.vertices()[v]);
        prod *= affine(slope, constant, p.vertices()[v]);
      }
      total += facet_simplex_measure(pts, p.facets()[k].normal) / prod;
    }
  }
  return total;
}

}  // namespace reeb::oracle
