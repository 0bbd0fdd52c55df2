#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "commands.hpp"
#include "problem.hpp"

namespace {

using namespace reeb;
using cli::run_command;

const std::string kProblems = REEB_PROBLEMS_DIR;

struct Invocation {
  int code;
  std::string out, err;
};

Invocation run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = run_command(args, out, err);
  return {code, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const std::string& text) {
  auto path = std::filesystem::temp_directory_path() / ("reeb_cli_" + name);
  std::ofstream(path) << text;
  return path.string();
}

TEST(Cli, IndexOnOrthant) {
  Invocation r = run({"index", "--input", kProblems + "/orthant2.json", "--reeb", "1,1"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "a0 = 1, a1 = 1\n");

  r = run({"index", "--input", kProblems + "/orthant2.json", "--reeb", "1,2"});
  EXPECT_EQ(r.out, "a0 = 1/2, a1 = 3/4\n");
  r = run({"index", "--input", kProblems + "/orthant2.json", "--reeb", "1,2", "--decimal"});
  EXPECT_EQ(r.out.rfind("a0 = 0.5", 0), 0u) << r.out;
}

TEST(Cli, ExitCodes) {
  Invocation r = run({"frobnicate"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("usage"), std::string::npos);
  EXPECT_EQ(run({}).code, 1);

  EXPECT_EQ(run({"index"}).code, 2);  // --input is required
  EXPECT_EQ(run({"index", "--input", kProblems + "/orthant2.json", "--bogus"}).code, 2);

  std::string broken = write_temp("broken.json", "{\n  \"reeb\": [\"1\",\n   \"2\" \"3\"]\n}\n");
  r = run({"index", "--input", broken});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find(":3:"), std::string::npos) << r.err;

  r = run({"index", "--input", kProblems + "/orthant2.json", "--reeb", "1,0"});
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.err.find("reeb-membership"), std::string::npos);
}

TEST(Problem, Validation) {
  auto check_of = [](const std::string& text) -> std::string {
    try {
      cli::parse_problem_text(text);
    } catch (const ValidationError& e) {
      return e.check();
    }
    return "";
  };
  EXPECT_EQ(check_of(R"({"polytope": {"vertices": [["0","0"],["2","0"],["2","2"],["0","2"]]}})"), "");
  EXPECT_EQ(check_of(R"({"cone": {"generators": [[1,0],[0,1]]}, "reeb": ["1","2"]})"), "");
  EXPECT_EQ(check_of(R"({"cone": {"generators": [[1,0],[0,1]]}, "reeb": ["1","0"]})"), "reeb-membership");
  EXPECT_EQ(check_of(R"({"cone": {"generators": [[1,0],[0,1]]}, "reeb": [1.5, 1]})"), "rational-literal");
  EXPECT_EQ(check_of(R"({"cone": {"generators": [[1,0],[0,1]]}, "reeb": ["1"]})"), "reeb-dimension");
  EXPECT_EQ(check_of(R"({"polytope": {"vertices": [["0"],["1"]]}, "colour": 1})"), "unknown-key");
  EXPECT_EQ(check_of(R"({"polytope": {"vertices": [["0"],["2"]]},
                          "test_config": {"pieces": [{"slope": ["0"], "offset": "0"}], "R": "1"},
                          "s_grid": {"min": "0", "max": "5", "steps": 3}})"),
            "s-grid-admissible");
  EXPECT_EQ(check_of(R"({"polytope": {"vertices": [["0","0"],["1","0"],["0","1"]]},
                          "yamabe": {"init": {"mode_perturbation": {"axis": 2, "amplitude": "1/10"}}}})"),
            "yamabe-init");

  // Inequality normals are scaled to primitive vectors.
  auto doc = cli::parse_problem_text(
      R"({"polytope": {"inequalities": [{"normal": [2], "offset": "0"}, {"normal": [-3], "offset": "6"}]}})");
  EXPECT_EQ(doc.polytope->volume(), Rational(2));
}

TEST(Cli, ScanCsv) {
  std::string path = (std::filesystem::temp_directory_path() / "reeb_cli_scan.csv").string();
  Invocation r = run({"scan", "--input", kProblems + "/interval_tc.json", "--output", path});
  ASSERT_EQ(r.code, 0) << r.err;
  std::ifstream in(path);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "s,a0,a1,EH_s");
  int rows = 0;
  while (std::getline(in, line)) {
    EXPECT_EQ(std::count(line.begin(), line.end(), ','), 3);
    ++rows;
  }
  EXPECT_EQ(rows, 8);
}

TEST(Cli, Deterministic) {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"scan", "--input", kProblems + "/interval_tc.json"},
           {"df", "--input", kProblems + "/interval_tc.json"},
           {"optimize", "--input", kProblems + "/hirzebruch.json"},
           {"verify", "--suite", "exactness", "--seed", "7"}}) {
    Invocation a = run(args), b = run(args);
    EXPECT_EQ(a.code, 0) << a.err << a.out;
    EXPECT_EQ(a.out, b.out);
  }
}

TEST(Cli, DfRoutesAgree) {
  Invocation r = run({"df", "--input", kProblems + "/interval_tc.json"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("routes_agree = yes"), std::string::npos) << r.out;
}

TEST(Cli, OptimizeHirzebruch) {
  Invocation r = run({"optimize", "--input", kProblems + "/hirzebruch.json", "--decimal"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("status = converged"), std::string::npos);
  EXPECT_NE(r.out.find("value = 94.99580914686"), std::string::npos) << r.out;
}

TEST(Cli, VerifyLogsSeed) {
  Invocation r = run({"verify", "--suite", "exactness", "--seed", "3"});
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(r.out.rfind("seed = 3\n", 0), 0u);
  EXPECT_EQ(run({"verify", "--suite", "nonsense"}).code, 2);
}

}  // namespace
