#include "problem.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include "json.hpp"

namespace reeb::cli {

namespace {

using json = nlohmann::json;

Rational rational_of(const json& v, const std::string& where) {
  if (v.is_string()) {
    const auto text = v.get<std::string>();
    try {
      return parse_rational(text);
    } catch (const std::invalid_argument&) {
      throw ValidationError("rational-literal", where + ": \"" + text + "\" is not a rational");
    }
  }
  if (v.is_number_integer()) return parse_rational(v.dump());
  throw ValidationError("rational-literal", where + " must be a string \"p/q\" or an integer");
}

Integer integer_of(const json& v, const std::string& where) {
  Rational r = rational_of(v, where);
  if (denominator(r) != 1) throw ValidationError("integer-literal", where + " must be an integer");
  return numerator(r);
}

int int_of(const json& v, const std::string& where, int lo, int hi) {
  Integer z = integer_of(v, where);
  if (z < lo || z > hi)
    throw ValidationError("range", where + " must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  return z.convert_to<int>();
}

const json& array_of(const json& v, const std::string& where) {
  if (!v.is_array()) throw ValidationError("schema", where + " must be an array");
  return v;
}

const json& object_of(const json& v, const std::string& where) {
  if (!v.is_object()) throw ValidationError("schema", where + " must be an object");
  return v;
}

const json& member(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ValidationError("schema", where + " needs \"" + key + "\"");
  return *it;
}

void allow_keys(const json& obj, std::initializer_list<const char*> keys, const std::string& where) {
  std::set<std::string> allowed(keys.begin(), keys.end());
  for (const auto& [k, _] : obj.items())
    if (!allowed.count(k)) throw ValidationError("unknown-key", where + " has unknown key \"" + k + "\"");
}

VectorQ rational_vector(const json& v, const std::string& where) {
  array_of(v, where);
  VectorQ out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) out(i) = rational_of(v[i], where + "[" + std::to_string(i) + "]");
  return out;
}

VectorZ integer_vector(const json& v, const std::string& where) {
  array_of(v, where);
  VectorZ out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) out(i) = integer_of(v[i], where + "[" + std::to_string(i) + "]");
  return out;
}

RationalPolytope parse_polytope(const json& v) {
  object_of(v, "polytope");
  allow_keys(v, {"vertices", "inequalities"}, "polytope");
  const bool has_v = v.contains("vertices"), has_i = v.contains("inequalities");
  if (has_v == has_i) throw ValidationError("schema", "polytope needs exactly one of \"vertices\" and \"inequalities\"");
  try {
    if (has_v) {
      std::vector<VectorQ> pts;
      for (const auto& p : array_of(v["vertices"], "polytope.vertices"))
        pts.push_back(rational_vector(p, "polytope.vertices"));
      if (pts.empty()) throw ValidationError("polytope-dimension", "polytope has no vertices");
      for (const auto& p : pts)
        if (p.size() != pts.front().size() || p.size() == 0)
          throw ValidationError("polytope-dimension", "vertices must share a positive length");
      return RationalPolytope::from_vertices(pts);
    }
    std::vector<Facet> facets;
    for (const auto& f : array_of(v["inequalities"], "polytope.inequalities")) {
      object_of(f, "inequality");
      allow_keys(f, {"normal", "offset"}, "inequality");
      VectorZ normal = integer_vector(member(f, "normal", "inequality"), "inequality.normal");
      Rational offset = rational_of(member(f, "offset", "inequality"), "inequality.offset");
      if (!facets.empty() && normal.size() != facets.front().normal.size())
        throw ValidationError("polytope-dimension", "inequality normals must share a length");
      Integer g = 0;
      for (Eigen::Index i = 0; i < normal.size(); ++i) g = gcd(g, normal(i));
      if (g == 0) throw ValidationError("polytope", "zero inequality normal");
      for (Eigen::Index i = 0; i < normal.size(); ++i) normal(i) /= g;
      facets.push_back({normal, offset / Rational(g)});
    }
    if (facets.empty()) throw ValidationError("polytope", "no inequalities");
    const int n = static_cast<int>(facets.front().normal.size());
    return RationalPolytope::from_inequalities(std::move(facets), n);
  } catch (const DimensionError& e) {
    throw ValidationError("polytope-dimension", e.what());
  } catch (const ValidationError&) {
    throw;
  } catch (const Error& e) {
    throw ValidationError("polytope", e.what());
  }
}

ConvexCone parse_cone(const json& v) {
  object_of(v, "cone");
  allow_keys(v, {"generators"}, "cone");
  std::vector<VectorZ> gens;
  for (const auto& g : array_of(member(v, "generators", "cone"), "cone.generators"))
    gens.push_back(integer_vector(g, "cone.generators"));
  if (gens.empty()) throw ValidationError("cone", "cone has no generators");
  for (const auto& g : gens)
    if (g.size() != gens.front().size()) throw ValidationError("cone", "generators must share a length");
  try {
    return ConvexCone::from_generators(gens);
  } catch (const Error& e) {
    throw ValidationError("cone", e.what());
  }
}

std::pair<std::vector<AffinePiece>, std::optional<Rational>> parse_test_config(const json& v, int n) {
  object_of(v, "test_config");
  allow_keys(v, {"pieces", "R"}, "test_config");
  std::vector<AffinePiece> pieces;
  for (const auto& p : array_of(member(v, "pieces", "test_config"), "test_config.pieces")) {
    object_of(p, "piece");
    allow_keys(p, {"slope", "offset"}, "piece");
    AffinePiece a{rational_vector(member(p, "slope", "piece"), "piece.slope"),
                  rational_of(member(p, "offset", "piece"), "piece.offset")};
    if (a.slope.size() != n)
      throw ValidationError("test-config-dimension", "piece slopes must have length " + std::to_string(n));
    pieces.push_back(std::move(a));
  }
  if (pieces.empty()) throw ValidationError("test-config", "test_config needs at least one piece");
  std::optional<Rational> ceiling;
  if (v.contains("R")) ceiling = rational_of(v["R"], "test_config.R");
  return {std::move(pieces), ceiling};
}

SGrid parse_s_grid(const json& v) {
  object_of(v, "s_grid");
  allow_keys(v, {"min", "max", "steps"}, "s_grid");
  SGrid g{rational_of(member(v, "min", "s_grid"), "s_grid.min"), rational_of(member(v, "max", "s_grid"), "s_grid.max"),
          int_of(member(v, "steps", "s_grid"), "s_grid.steps", 1, 1000000)};
  if (g.min > g.max) throw ValidationError("s-grid", "s_grid.min exceeds s_grid.max");
  if (g.steps == 1 && g.min != g.max) throw ValidationError("s-grid", "a single step needs min = max");
  return g;
}

YamabeSpec parse_yamabe(const json& v) {
  object_of(v, "yamabe");
  allow_keys(v, {"grid", "tol", "max_iter", "init"}, "yamabe");
  YamabeSpec y;
  if (v.contains("grid")) y.grid = int_of(v["grid"], "yamabe.grid", 4, 4096);
  if (v.contains("tol")) {
    Rational t = rational_of(v["tol"], "yamabe.tol");
    if (t <= 0) throw ValidationError("range", "yamabe.tol must be positive");
    y.tol = to_double(t);
  }
  if (v.contains("max_iter")) y.max_iter = int_of(v["max_iter"], "yamabe.max_iter", 0, 10000000);
  if (v.contains("init")) {
    const json& init = v["init"];
    if (init.is_string()) {
      if (init.get<std::string>() != "constant")
        throw ValidationError("yamabe-init", "yamabe.init must be \"constant\" or a mode_perturbation");
    } else {
      object_of(init, "yamabe.init");
      allow_keys(init, {"mode_perturbation"}, "yamabe.init");
      const json& m = object_of(member(init, "mode_perturbation", "yamabe.init"), "mode_perturbation");
      allow_keys(m, {"axis", "amplitude"}, "mode_perturbation");
      y.axis = int_of(member(m, "axis", "mode_perturbation"), "mode_perturbation.axis", 0, 1000);
      y.amplitude = rational_of(member(m, "amplitude", "mode_perturbation"), "mode_perturbation.amplitude");
      if (!(abs(y.amplitude) < 1)) throw ValidationError("yamabe-init", "perturbation amplitude must lie in (-1, 1)");
    }
  }
  return y;
}

std::pair<int, int> line_column(const std::string& text, std::size_t byte) {
  int line = 1, column = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

}  // namespace

std::vector<Rational> SGrid::values() const {
  std::vector<Rational> out;
  if (steps == 1) return {min};
  for (int i = 0; i < steps; ++i) out.push_back(min + (max - min) * Rational(i, steps - 1));
  return out;
}

ConvexCone ProblemDocument::moment_cone() const {
  if (cone) return *cone;
  return cone_over(require_polytope());
}

VectorQ ProblemDocument::default_reeb() const {
  if (reeb) return *reeb;
  if (!cone) {
    VectorQ xi = VectorQ::Zero(require_polytope().dimension() + 1);
    xi(xi.size() - 1) = 1;
    return xi;
  }
  VectorQ xi = VectorQ::Zero(cone->dimension());
  for (const auto& w : dual_cone(*cone).generators()) xi += to_rational(w);
  return xi;
}

const RationalPolytope& ProblemDocument::require_polytope() const {
  if (!polytope) throw ValidationError("missing-polytope", "the document has no polytope");
  return *polytope;
}

const ToricTestConfig& ProblemDocument::require_test_config() const {
  if (!test_config) throw ValidationError("missing-test-config", "the document has no test_config");
  return *test_config;
}

SmoothFunction ProblemDocument::yamabe_init() const {
  const int n = require_polytope().dimension();
  if (!yamabe.axis) {
    return [n](const Vector<double>&) { return FunctionJet{1.0, Vector<double>::Zero(n), Matrix<double>::Zero(n, n)}; };
  }
  const int axis = *yamabe.axis;
  Rational lo = polytope->vertices().front()(axis), hi = lo;
  for (const auto& v : polytope->vertices()) {
    lo = std::min(lo, Rational(v(axis)));
    hi = std::max(hi, Rational(v(axis)));
  }
  const double a = to_double(yamabe.amplitude), x0 = to_double(lo), k = std::numbers::pi / to_double(hi - lo);
  return [=](const Vector<double>& x) {
    FunctionJet j{1 + a * std::cos(k * (x(axis) - x0)), Vector<double>::Zero(n), Matrix<double>::Zero(n, n)};
    j.gradient(axis) = -a * k * std::sin(k * (x(axis) - x0));
    j.hessian(axis, axis) = -a * k * k * std::cos(k * (x(axis) - x0));
    return j;
  };
}

ProblemDocument parse_problem_text(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    auto [line, column] = line_column(text, e.byte);
    throw ParseError(e.what(), line, column);
  }
  object_of(root, "document");
  allow_keys(root, {"polytope", "cone", "reeb", "test_config", "s_grid", "yamabe"}, "document");

  ProblemDocument doc;
  if (root.contains("polytope")) doc.polytope = parse_polytope(root["polytope"]);
  if (root.contains("cone")) doc.cone = parse_cone(root["cone"]);
  if (root.contains("reeb")) {
    VectorQ xi = rational_vector(root["reeb"], "reeb");
    ConvexCone c = doc.moment_cone();
    if (xi.size() != c.dimension())
      throw ValidationError("reeb-dimension", "reeb must have length " + std::to_string(c.dimension()));
    if (!reeb_cone_contains(c, xi))
      throw ValidationError("reeb-membership", "reeb is not in the open Reeb cone of the moment cone");
    doc.reeb = xi;
  }
  if (root.contains("test_config")) {
    const auto& p = doc.require_polytope();
    auto [pieces, ceiling] = parse_test_config(root["test_config"], p.dimension());
    try {
      doc.test_config = build_testconfig(p, PiecewiseLinearConvex(pieces), ceiling);
    } catch (const ValidationError&) {
      throw;
    } catch (const Error& e) {
      throw ValidationError("test-config", e.what());
    }
  }
  if (root.contains("s_grid")) {
    doc.s_grid = parse_s_grid(root["s_grid"]);
    if (doc.test_config)
      for (const auto& s : doc.s_grid->values())
        if (!doc.test_config->admissible.contains(s))
          throw ValidationError("s-grid-admissible", "s = " + to_string(s) + " is outside the admissible interval " +
                                                         doc.test_config->admissible.to_string());
  }
  if (root.contains("yamabe")) {
    doc.yamabe = parse_yamabe(root["yamabe"]);
    if (doc.yamabe.axis && doc.polytope && *doc.yamabe.axis >= doc.polytope->dimension())
      throw ValidationError("yamabe-init", "mode_perturbation.axis exceeds the polytope dimension");
  }
  return doc;
}

ProblemDocument parse_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path, 0, 0);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_problem_text(ss.str());
}

VectorQ parse_rational_list(const std::string& text) {
  std::vector<Rational> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      parts.push_back(parse_rational(item));
    } catch (const std::invalid_argument&) {
      throw ValidationError("rational-literal", "\"" + item + "\" is not a rational");
    }
  }
  if (parts.empty()) throw ValidationError("rational-literal", "empty vector");
  VectorQ out(static_cast<Eigen::Index>(parts.size()));
  for (std::size_t i = 0; i < parts.size(); ++i) out(i) = parts[i];
  return out;
}

}  // namespace reeb::cli
