#include "commands.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "acceptance.hpp"
#include "problem.hpp"
#include "reeb/reeb_opt.hpp"

namespace reeb::cli {

namespace {

constexpr std::array<const char*, 8> kSubcommands = {"index", "eh", "df", "scan", "yamabe", "hessian", "optimize",
                                                     "verify"};

struct Options {
  std::string input;
  std::string reeb;
  std::string output;
  std::string objective = "eh";
  std::string slice;
  std::string suite = "all";
  unsigned seed = 0;
  int count = 4;
  std::optional<double> c;
  bool decimal = false;
};

class Renderer {
 public:
  explicit Renderer(bool decimal) : decimal_(decimal) {}
  std::string operator()(const Rational& q) const { return decimal_ ? to_decimal(q, 17) : to_string(q); }
  std::string operator()(double x) const { return to_decimal(x, 17); }
  std::string vector(const VectorQ& v) const {
    std::string s = "(";
    for (Eigen::Index i = 0; i < v.size(); ++i) s += (i ? ", " : "") + (*this)(v(i));
    return s + ")";
  }
  std::string vector(const Vector<double>& v) const {
    std::string s = "(";
    for (Eigen::Index i = 0; i < v.size(); ++i) s += (i ? ", " : "") + (*this)(v(i));
    return s + ")";
  }

 private:
  bool decimal_;
};

VectorQ reeb_vector(const ProblemDocument& doc, const Options& o) {
  if (o.reeb.empty()) return doc.default_reeb();
  VectorQ xi = parse_rational_list(o.reeb);
  ConvexCone c = doc.moment_cone();
  if (xi.size() != c.dimension())
    throw ValidationError("reeb-dimension", "--reeb must have length " + std::to_string(c.dimension()));
  if (!reeb_cone_contains(c, xi))
    throw ValidationError("reeb-membership", "--reeb is not in the open Reeb cone of the moment cone");
  return xi;
}

int cmd_index(const ProblemDocument& doc, const Options& o, std::ostream& out) {
  Renderer r(o.decimal);
  auto a = index_coeffs(doc.moment_cone(), reeb_vector(doc, o));
  out << "a0 = " << r(a.a0) << ", a1 = " << r(a.a1) << "\n";
  return 0;
}

int cmd_eh(const ProblemDocument& doc, const Options& o, std::ostream& out) {
  Renderer r(o.decimal);
  ConvexCone c = doc.moment_cone();
  VectorQ xi = reeb_vector(doc, o);
  auto a = index_coeffs(c, xi);
  out << "reeb = " << r.vector(xi) << "\n";
  out << "a0 = " << r(a.a0) << ", a1 = " << r(a.a1) << "\n";
  out << "EH = " << r(affine_eh(c.dimension() - 1, a.a0, a.a1)) << "\n";
  return 0;
}

int cmd_df(const ProblemDocument& doc, const Options& o, std::ostream& out) {
  Renderer r(o.decimal);
  const auto& tc = doc.require_test_config();
  Rational donaldson = df_donaldson(tc.base, tc.g);
  SlopeAtZero slope = eh_s_slope_at_zero(tc);
  Rational k = kappa(tc.n());
  out << "df_donaldson = " << r(donaldson) << "\n";
  out << "df_cs = " << r(slope.df_cs) << "\n";
  out << "df_cs_quotient = " << r(slope.df_cs_quotient) << "\n";
  out << "normalized_slope = " << r(slope.normalized) << "\n";
  out << "kappa = " << r(k) << "\n";
  out << "slope = " << r(slope.slope) << "\n";
  // The quotient form differs from df_cs unless a0 = 1, so only the Donaldson route is compared.
  out << "routes_agree = " << (slope.normalized == k * donaldson ? "yes" : "no") << "\n";
  if (tc.warning) out << "warning = " << *tc.warning << "\n";
  return 0;
}

int cmd_scan(const ProblemDocument& doc, const Options& o, std::ostream& out) {
  Renderer r(o.decimal);
  const auto& tc = doc.require_test_config();
  if (!doc.s_grid) throw ValidationError("missing-s-grid", "the document has no s_grid");
  std::ostringstream csv;
  csv << "s,a0,a1,EH_s\n";
  for (const auto& p : scan(tc, doc.s_grid->values()))
    csv << r(p.s) << "," << r(p.a0) << "," << r(p.a1) << "," << r(p.eh) << "\n";
  if (o.output.empty()) {
    out << csv.str();
    return 0;
  }
  std::ofstream file(o.output, std::ios::binary);
  if (!file) throw Error("cannot write " + o.output);
  file << csv.str();
  out << "wrote " << doc.s_grid->steps << " rows to " << o.output << "\n";
  return 0;
}

int cmd_yamabe(const ProblemDocument& doc, const Options& o, std::ostream& out) {
  Renderer r(o.decimal);
  YamabeOptions options;
  options.tol = doc.yamabe.tol;
  options.max_iter = doc.yamabe.max_iter;
  options.nodes_per_axis = doc.yamabe.grid;
  YamabeResult res = yamabe_minimize(doc.require_polytope(), doc.yamabe_init(), options);
  const auto& f = res.f.values();
  const double mean = res.f.grid().integrate(f) / res.f.grid().rule.weights.sum();
  out << "status = " << to_string(res.status) << "\n";
  out << "iterations = " << res.iterations << "\n";
  out << "EH = " << r(res.eh) << "\n";
  out << "projected_gradient_sup = " << r(res.projected_gradient_sup) << "\n";
  out << "eh_gradient_sup = " << r(res.eh_gradient_sup) << "\n";
  out << "relative_spread = " << r((f.maxCoeff() - f.minCoeff()) / mean) << "\n";
  return res.status == YamabeStatus::converged ? 0 : 1;
}

int cmd_hessian(const ProblemDocument& doc, const Options& o, std::ostream& out) {
  Renderer r(o.decimal);
  if (o.count < 1) throw ValidationError("range", "--count must be positive");
  HessianSpectrum h = hessian_spectrum(doc.require_polytope(), o.c, o.count);
  out << "lambda,hessian\n";
  for (std::size_t i = 0; i < h.values.size(); ++i) out << r(h.lambdas[i]) << "," << r(h.values[i]) << "\n";
  out << "positive_definite = " << (h.positive_definite ? "yes" : "no") << "\n";
  return 0;
}

int cmd_optimize(const ProblemDocument& doc, const Options& o, std::ostream& out) {
  Renderer r(o.decimal);
  ReebObjective objective;
  if (o.objective == "eh") {
    objective = ReebObjective::eh;
  } else if (o.objective == "volume") {
    objective = ReebObjective::volume;
  } else {
    throw CLI::ValidationError("--objective", "must be eh or volume");
  }
  ConvexCone c = doc.moment_cone();
  VectorZ b;
  if (o.slice.empty()) {
    b = default_slice_covector(c);
  } else {
    VectorQ q = parse_rational_list(o.slice);
    b = VectorZ(q.size());
    for (Eigen::Index i = 0; i < q.size(); ++i) {
      if (denominator(q(i)) != 1) throw ValidationError("integer-literal", "--slice entries must be integers");
      b(i) = numerator(q(i));
    }
  }
  VectorQ init = reeb_vector(doc, o);
  ReebOptimum opt = minimize_reeb(objective, c, b, init);
  out << "objective = " << to_string(objective) << "\n";
  out << "status = " << to_string(opt.trace.reason) << "\n";
  out << "newton_steps = " << opt.trace.newton_steps() << "\n";
  out << "xi = " << r.vector(opt.xi) << "\n";
  out << "xi_rational = " << r.vector(opt.xi_rational) << "\n";
  out << "value = " << r(opt.value) << "\n";
  out << "exact_gradient_norm = " << r(opt.exact_gradient_norm) << "\n";
  return opt.trace.reason == TerminationReason::converged ? 0 : 1;
}

int cmd_verify(const Options& o, std::ostream& out) {
  auto suite = acceptance::parse_suite(o.suite);
  if (!suite) throw CLI::ValidationError("--suite", "must be exactness, oracles, yamabe or all");
  out << "seed = " << o.seed << "\n";
  int failures = 0;
  for (int id : acceptance::criteria(*suite)) {
    acceptance::CheckResult res;
    try {
      res = acceptance::run_criterion(id, o.seed);
    } catch (const std::exception& e) {
      res.id = id;
      res.name = "exception";
      res.detail = e.what();
    }
    out << acceptance::format(res) << "\n";
    if (!res.passed) ++failures;
  }
  out << (failures == 0 ? std::string("all checks passed") : std::to_string(failures) + " checks failed") << "\n";
  return failures == 0 ? 0 : 1;
}

}  // namespace

std::string usage() {
  return "usage: reeb-eh <subcommand> [options]\n"
         "subcommands:\n"
         "  index     a0, a1 at --reeb\n"
         "  eh        affine EH at --reeb\n"
         "  df        DF routes for the test_config\n"
         "  scan      EH_s over s_grid as CSV (--output)\n"
         "  yamabe    vertical minimization report\n"
         "  hessian   vertical Hessian spectrum (--count, --c)\n"
         "  optimize  Reeb cone minimization (--objective eh|volume, --slice)\n"
         "  verify    acceptance checks (--suite exactness|oracles|yamabe|all, --seed)\n";
}

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  if (args.empty() || std::find(kSubcommands.begin(), kSubcommands.end(), args.front()) == kSubcommands.end()) {
    if (!args.empty()) err << "unknown subcommand: " << args.front() << "\n";
    err << usage();
    return 1;
  }
  const std::string name = args.front();
  Options o;
  CLI::App app{"reeb-eh " + name};
  app.set_help_flag("-h,--help");
  const bool needs_input = name != "verify";
  if (needs_input) app.add_option("--input", o.input, "problem document (JSON)")->required();
  app.add_flag("--decimal", o.decimal, "render exact values as 17-digit decimals");
  if (name == "index" || name == "eh" || name == "optimize") app.add_option("--reeb", o.reeb, "Reeb vector a,b,...");
  if (name == "scan") app.add_option("--output", o.output, "CSV path (default stdout)");
  if (name == "optimize") {
    app.add_option("--objective", o.objective, "eh or volume");
    app.add_option("--slice", o.slice, "integer slice covector");
  }
  if (name == "hessian") {
    app.add_option("--count", o.count, "number of eigenvalues");
    app.add_option("--c", o.c, "constant C (default sbar)");
  }
  if (name == "verify") {
    app.add_option("--suite", o.suite, "exactness, oracles, yamabe or all");
    app.add_option("--seed", o.seed, "seed for randomized checks");
  }

  std::vector<std::string> rest(args.rbegin(), args.rend() - 1);  // CLI11 consumes a reversed list
  try {
    app.parse(rest);
  } catch (const CLI::ParseError& e) {
    std::ostringstream help, error;
    int code = app.exit(e, help, error);
    out << help.str();
    err << error.str();
    return code == 0 ? 0 : 2;
  }

  try {
    if (name == "verify") return cmd_verify(o, out);
    ProblemDocument doc = parse_problem(o.input);
    if (name == "index") return cmd_index(doc, o, out);
    if (name == "eh") return cmd_eh(doc, o, out);
    if (name == "df") return cmd_df(doc, o, out);
    if (name == "scan") return cmd_scan(doc, o, out);
    if (name == "yamabe") return cmd_yamabe(doc, o, out);
    if (name == "hessian") return cmd_hessian(doc, o, out);
    return cmd_optimize(doc, o, out);
  } catch (const ParseError& e) {
    err << o.input << ":" << e.line() << ":" << e.column() << ": " << e.what() << "\n";
    return 2;
  } catch (const CLI::ValidationError& e) {
    err << e.what() << "\n";
    return 2;
  } catch (const ValidationError& e) {
    err << "validation failed: " << e.what() << "\n";
    return 3;
  } catch (const ReebMembershipError& e) {
    err << "validation failed: reeb-membership: " << e.what() << "\n";
    return 3;
  } catch (const DimensionError& e) {
    err << "validation failed: dimension: " << e.what() << "\n";
    return 3;
  } catch (const DomainError& e) {
    err << "validation failed: domain: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace reeb::cli
