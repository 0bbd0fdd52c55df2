#ifndef REEB_VERIFY_ACCEPTANCE_HPP
#define REEB_VERIFY_ACCEPTANCE_HPP

// The twelve acceptance criteria, shared by the acceptance binary and `reeb-eh verify`.

#include <optional>
#include <string>
#include <vector>

namespace reeb::acceptance {

struct CheckResult {
  int id = 0;
  std::string name;
  bool passed = false;
  double discrepancy = 0;  // largest measured error against the criterion's reference
  double tolerance = 0;
  std::string detail;
};

enum class Suite { exactness, oracles, yamabe, all };

std::optional<Suite> parse_suite(const std::string& name);

/** Criterion ids in a suite, ascending. */
std::vector<int> criteria(Suite suite);

/** Runs one criterion. Randomized criteria derive their streams from seed. */
CheckResult run_criterion(int id, unsigned seed = 0);

/** "PASS AC<id> <name> discrepancy=<d> tol=<t> <detail>". */
std::string format(const CheckResult& r);

}  // namespace reeb::acceptance

#endif
