#ifndef REEB_TOOLS_PROBLEM_HPP
#define REEB_TOOLS_PROBLEM_HPP

#include <optional>
#include <string>
#include <vector>

#include "reeb/testconfig.hpp"
#include "reeb/vertical.hpp"

namespace reeb::cli {

/** Malformed JSON; exit code 2. */
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line, int column)
      : Error(what), line_(line), column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_, column_;
};

struct SGrid {
  Rational min, max;
  int steps = 0;
  /** steps points from min to max inclusive (a single point is min). */
  std::vector<Rational> values() const;
};

struct YamabeSpec {
  int grid = 64;
  double tol = 1e-8;
  int max_iter = 500;
  /** Constant start when empty; otherwise 1 + amplitude cos(pi (x_axis - lo)/(hi - lo)). */
  std::optional<int> axis;
  Rational amplitude;
};

struct ProblemDocument {
  std::optional<RationalPolytope> polytope;
  std::optional<ConvexCone> cone;  // explicit moment cone
  std::optional<VectorQ> reeb;
  std::optional<ToricTestConfig> test_config;
  std::optional<SGrid> s_grid;
  YamabeSpec yamabe;

  /** The explicit cone, else the cone over the polytope. ValidationError("missing-polytope") if neither. */
  ConvexCone moment_cone() const;
  /** Document Reeb vector, else (0, ..., 0, 1) over a polytope, else the sum of the dual generators. */
  VectorQ default_reeb() const;
  const RationalPolytope& require_polytope() const;
  const ToricTestConfig& require_test_config() const;
  SmoothFunction yamabe_init() const;
};

/** Parses a document from text. ParseError for bad JSON, ValidationError for schema and semantic checks. */
ProblemDocument parse_problem_text(const std::string& text);

/** Reads and parses a file; an unreadable file is a ParseError at 0:0. */
ProblemDocument parse_problem(const std::string& path);

/** "1,2,-1/3" as a rational vector; ValidationError("rational-literal") otherwise. */
VectorQ parse_rational_list(const std::string& text);

}  // namespace reeb::cli

#endif
