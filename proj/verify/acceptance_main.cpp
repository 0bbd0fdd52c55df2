#include <chrono>
#include <cstdlib>
#include <iostream>

#include "acceptance.hpp"

int main(int argc, char** argv) {
  using namespace reeb::acceptance;
  unsigned seed = argc > 1 ? static_cast<unsigned>(std::strtoul(argv[1], nullptr, 10)) : 0;
  int failures = 0;
  for (int id : criteria(Suite::all)) {
    auto start = std::chrono::steady_clock::now();
    CheckResult r;
    try {
      r = run_criterion(id, seed);
    } catch (const std::exception& e) {
      r.id = id;
      r.name = "exception";
      r.detail = e.what();
    }
    std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start;
    std::cout << format(r) << " [" << dt.count() << " s]" << std::endl;
    if (!r.passed) ++failures;
  }
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << "\n";
  return failures == 0 ? 0 : 1;
}
