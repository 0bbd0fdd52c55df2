#include "reeb/testconfig.hpp"

#include <algorithm>
#include <cmath>

#include "reeb/errors.hpp"
#include "reeb/parallel.hpp"
#include "reeb/quadrature.hpp"

namespace reeb {

namespace {

// <normal, x> + offset >= 0 rescaled to a primitive integer normal.
Facet rational_facet(const VectorQ& normal, const Rational& offset) {
  VectorZ z = primitive(normal);
  for (Eigen::Index i = 0; i < normal.size(); ++i)
    if (normal(i) != 0) return Facet{z, offset * Rational(z(i)) / normal(i)};
  throw DimensionError("zero inequality normal");
}

Rational power(const Rational& x, int k) {
  Rational r = 1;
  for (int i = 0; i < k; ++i) r *= x;
  return r;
}

Rational piece_value(const AffinePiece& a, const VectorQ& x) { return dot(a.slope, x) + a.offset; }

}  // namespace

PiecewiseLinearConvex::PiecewiseLinearConvex(std::vector<AffinePiece> pieces) : pieces_(std::move(pieces)) {
  if (pieces_.empty()) throw ValidationError("pieces", "a piecewise-linear function needs at least one piece");
  for (const auto& a : pieces_)
    if (a.slope.size() != pieces_.front().slope.size()) throw ValidationError("dimension", "pieces of mixed length");
  for (std::size_t i = 0; i < pieces_.size(); ++i)
    for (std::size_t j = i + 1; j < pieces_.size(); ++j)
      if (equal<Rational>(pieces_[i].slope, pieces_[j].slope) && pieces_[i].offset == pieces_[j].offset)
        throw ValidationError("duplicate_piece", "pieces " + std::to_string(i) + " and " + std::to_string(j) + " coincide");
}

Rational PiecewiseLinearConvex::operator()(const VectorQ& x) const {
  Rational best = piece_value(pieces_.front(), x);
  for (const auto& a : pieces_) best = std::max(best, piece_value(a, x));
  return best;
}

double PiecewiseLinearConvex::operator()(const Vector<double>& x) const {
  double best = -INFINITY;
  for (const auto& a : pieces_) best = std::max(best, scalar_cast<double>(a.slope).dot(x) + to_double(a.offset));
  return best;
}

namespace {

// Region of P where piece i attains the max, or nothing when it has empty interior.
std::optional<RationalPolytope> region_of(const std::vector<AffinePiece>& pieces, std::size_t i,
                                          const RationalPolytope& p) {
  std::vector<Facet> facets = p.facets();
  for (std::size_t j = 0; j < pieces.size(); ++j) {
    if (j == i) continue;
    VectorQ normal = pieces[i].slope - pieces[j].slope;
    Rational offset = pieces[i].offset - pieces[j].offset;
    if (normal.isZero()) {
      if (offset < 0) return std::nullopt;
      continue;
    }
    facets.push_back(rational_facet(normal, offset));
  }
  try {
    return RationalPolytope::from_inequalities(std::move(facets), p.dimension());
  } catch (const DimensionError&) {
    return std::nullopt;
  }
}

}  // namespace

std::vector<RationalPolytope> PiecewiseLinearConvex::active_regions(const RationalPolytope& p) const {
  if (p.dimension() != dimension()) throw ValidationError("dimension", "function and polytope dimensions differ");
  std::vector<RationalPolytope> out;
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    auto r = region_of(pieces_, i, p);
    if (!r) throw ValidationError("redundant_piece", "piece " + std::to_string(i) + " is not active on an open subset of P");
    out.push_back(std::move(*r));
  }
  return out;
}

PiecewiseLinearConvex PiecewiseLinearConvex::pruned(const RationalPolytope& p) const {
  if (p.dimension() != dimension()) throw ValidationError("dimension", "function and polytope dimensions differ");
  std::vector<AffinePiece> kept;
  for (std::size_t i = 0; i < pieces_.size(); ++i)
    if (region_of(pieces_, i, p)) kept.push_back(pieces_[i]);
  return PiecewiseLinearConvex(std::move(kept));
}

Rational PiecewiseLinearConvex::min_over(const RationalPolytope& p) const {
  std::optional<Rational> best;
  for (const auto& r : active_regions(p))
    for (const auto& v : r.vertices()) {
      Rational x = (*this)(v);
      if (!best || x < *best) best = x;
    }
  return *best;
}

Rational PiecewiseLinearConvex::max_over(const RationalPolytope& p) const {
  std::optional<Rational> best;
  for (const auto& v : p.vertices()) {
    Rational x = (*this)(v);
    if (!best || x > *best) best = x;
  }
  return *best;
}

PiecewiseLinearConvex PiecewiseLinearConvex::shifted(const Rational& c) const {
  std::vector<AffinePiece> out = pieces_;
  for (auto& a : out) a.offset += c;
  return PiecewiseLinearConvex(std::move(out));
}

bool AdmissibleInterval::contains(const Rational& s) const {
  return (!lo || s > *lo) && (!hi || s < *hi);
}

bool AdmissibleInterval::contains(double s) const {
  return (!lo || s > to_double(*lo)) && (!hi || s < to_double(*hi));
}

std::string AdmissibleInterval::to_string() const {
  return "(" + (lo ? reeb::to_string(*lo) : std::string("-inf")) + ", " + (hi ? reeb::to_string(*hi) : std::string("inf")) +
         ")";
}

VectorQ ToricTestConfig::total_reeb(const Rational& s) const {
  VectorQ xi = VectorQ::Zero(n() + 2);
  xi(n()) = -s;
  xi(n() + 1) = 1 - s * mu_max;
  return xi;
}

ToricTestConfig build_testconfig(const RationalPolytope& p, const PiecewiseLinearConvex& g0,
                                 std::optional<Rational> ceiling, const Rational& mu_max, TestConfigMode mode) {
  const int n = p.dimension();
  if (g0.dimension() != n) throw ValidationError("dimension", "function and polytope dimensions differ");
  auto regions = g0.active_regions(p);
  // R refers to the supplied g; normalizing g to min 0 shifts R with it, leaving Q unchanged.
  const Rational low = g0.min_over(p);
  PiecewiseLinearConvex g = g0.shifted(-low);
  Rational top = g.max_over(p);
  Rational r = ceiling ? *ceiling - low : top + 1;
  if (!(r > top)) throw ValidationError("ceiling", "R must exceed max_P g = " + to_string(top + low));

  std::vector<Facet> facets;
  for (const auto& f : p.facets()) {
    VectorZ normal = VectorZ::Zero(n + 1);
    normal.head(n) = f.normal;
    facets.push_back(Facet{normal, f.offset});
  }
  VectorZ up = VectorZ::Zero(n + 1);
  up(n) = 1;
  facets.push_back(Facet{up, 0});
  for (const auto& a : g.pieces()) {
    VectorQ normal(n + 1);
    normal.head(n) = -a.slope;
    normal(n) = -1;
    facets.push_back(rational_facet(normal, r - a.offset));
  }
  RationalPolytope roof = RationalPolytope::from_inequalities(std::move(facets), n + 1);

  ToricTestConfig tc{p, g, std::move(regions), r, mu_max, roof, cone_over(roof), {}, is_delzant(roof), std::nullopt};
  if (tc.roof_class != PolytopeClass::delzant) {
    std::string what = std::string("roof polytope is ") + to_string(tc.roof_class) + ", not Delzant";
    if (mode == TestConfigMode::theorem_certified) throw ValidationError("delzant_roof", what);
    tc.warning = what;
  }
  // The zeta-moment t + mu_max ranges over [mu_max, R + mu_max] on Q.
  const Rational margin(99, 100);
  Rational m0 = mu_max, m1 = r + mu_max;
  if (m1 > 0) tc.admissible.hi = margin / m1;
  if (m0 < 0) tc.admissible.lo = margin / m0;
  return tc;
}

Rational integrate_affine_power(const RationalPolytope& p, const VectorQ& slope, const Rational& constant) {
  std::vector<Rational> values;
  for (const auto& v : p.vertices()) {
    Rational l = dot(slope, v) + constant;
    if (!(l > 0)) throw DomainError("affine function must be positive on the polytope");
    values.push_back(l);
  }
  Rational total = 0;
  for (const auto& s : p.simplices()) {
    Rational term = s.measure;
    for (std::size_t v : s.vertices) term /= values[v];
    total += term;
  }
  return total;
}

Rational df_donaldson(const RationalPolytope& p, const PiecewiseLinearConvex& g) {
  auto regions = g.active_regions(p);
  Rational interior = 0, boundary = 0;
  for (std::size_t i = 0; i < regions.size(); ++i) {
    const auto& r = regions[i];
    const auto& piece = g.pieces()[i];
    auto barycenter_value = [&](const IndexSet& idx) {
      VectorQ c = VectorQ::Zero(p.dimension());
      for (std::size_t v : idx) c += r.vertices()[v];
      c /= Rational(static_cast<long>(idx.size()));
      return piece_value(piece, c);
    };
    for (const auto& s : r.simplices()) interior += s.measure * barycenter_value(s.vertices);
    for (std::size_t k = 0; k < r.facets().size(); ++k) {
      const Facet& f = r.facets()[k];
      bool on_boundary = std::any_of(p.facets().begin(), p.facets().end(), [&](const Facet& h) {
        return equal<Integer>(h.normal, f.normal) && h.offset == f.offset;
      });
      if (!on_boundary) continue;
      for (const auto& s : r.facet_simplices(k)) boundary += s.measure * barycenter_value(s.vertices);
    }
  }
  return boundary - p.boundary_measure() / p.volume() * interior;
}

IndexCoefficients central_index_coeffs(const ToricTestConfig& tc, const Rational& s) {
  if (!tc.admissible.contains(s))
    throw DomainError("s = " + to_string(s) + " is outside the admissible interval " + tc.admissible.to_string());
  const int n = tc.n();
  const Rational c = 1 - s * tc.mu_max;
  const Rational vol = tc.base.volume(), a1y = tc.base.boundary_measure() / 2;
  IndexCoefficients total = index_coeffs(tc.total_cone, tc.total_reeb(s));
  Rational v = vol / power(c, n + 1);
  IndexCoefficients out;
  out.a0 = v + s * (n + 1) * total.a0;
  out.a1 = a1y / power(c, n) - s * n * (v - total.a1) - s * s * Rational(n * (n + 1), 2) * total.a0;
  return out;
}

std::array<Rational, 2> central_index_derivatives(const ToricTestConfig& tc) {
  const int n = tc.n();
  const Rational vol = tc.base.volume(), a1y = tc.base.boundary_measure() / 2;
  IndexCoefficients total = index_coeffs(tc.total_cone, tc.total_reeb(0));
  return {(n + 1) * tc.mu_max * vol + (n + 1) * total.a0, n * tc.mu_max * a1y - n * (vol - total.a1)};
}

double eh_s(const ToricTestConfig& tc, const Rational& s) {
  auto ab = central_index_coeffs(tc, s);
  return affine_eh(tc.n(), ab.a0, ab.a1);
}

SlopeAtZero eh_s_slope_at_zero(const ToricTestConfig& tc) {
  const int n = tc.n();
  const Rational a0 = tc.base.volume(), a1 = tc.base.boundary_measure() / 2;
  auto d = central_index_derivatives(tc);
  SlopeAtZero out;
  out.df_cs = df_cs(n, a0, a1, d[0], d[1]);
  out.df_cs_quotient = df_cs_quotient_form(n, a0, a1, d[0], d[1]);
  out.normalized = n * out.df_cs;
  out.slope = affine_eh_slope(n, a0, out.df_cs);
  out.stability_slope = -out.normalized;
  return out;
}

Rational kappa(int n) { return Rational(-n, 2); }

VolumeLimit volume_limit_check(const ToricTestConfig& tc, const Rational& s, int nodes_per_axis) {
  const int n = tc.n();
  VolumeLimit out;
  out.rhs = central_index_coeffs(tc, s).a0;
  const Rational c = 1 - s * tc.mu_max;
  // On the region of piece a: c - s (R - g) = c - s (R - b) + s <a, x>.
  out.lhs = 0;
  for (std::size_t i = 0; i < tc.regions.size(); ++i) {
    const auto& a = tc.g.pieces()[i];
    VectorQ slope = a.slope * s;
    out.lhs += integrate_affine_power(tc.regions[i], slope, c - s * (tc.ceiling - a.offset));
  }
  out.discrepancy = out.lhs - out.rhs;
  if (out.discrepancy < 0) out.discrepancy = -out.discrepancy;

  auto rule = polytope_rule<double>(tc.roof, nodes_per_axis);
  const double sd = to_double(s), cd = to_double(c);
  double integral = 0;
  for (Eigen::Index k = 0; k < rule.size(); ++k) integral += rule.weights(k) * std::pow(cd - sd * rule.nodes(n, k), -(n + 2));
  out.lhs_quadrature = to_double(tc.base.volume()) / std::pow(cd, n + 1) + (n + 1) * sd * integral;
  out.quadrature_relative_error = std::abs(out.lhs_quadrature / to_double(out.lhs) - 1);
  return out;
}

std::vector<EhCurvePoint> scan(const ToricTestConfig& tc, const std::vector<Rational>& s_values) {
  for (const auto& s : s_values)
    if (!tc.admissible.contains(s))
      throw DomainError("s = " + to_string(s) + " is outside the admissible interval " + tc.admissible.to_string());
  std::vector<EhCurvePoint> out(s_values.size());
  parallel_for(s_values.size(), [&](std::size_t i) {
    auto ab = central_index_coeffs(tc, s_values[i]);
    out[i] = EhCurvePoint{s_values[i], ab.a0, ab.a1, affine_eh(tc.n(), ab.a0, ab.a1)};
  });
  return out;
}

}  // namespace reeb
