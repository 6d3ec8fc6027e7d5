// Standalone runner: property_tests [seed]
#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <string>

#include "property_suites.hpp"

int main(int argc, char** argv) {
  std::uint64_t seed = 20240601;
  if (argc > 1) seed = std::strtoull(argv[1], nullptr, 10);
  bool ok = true;
  double total = 0;
  for (const auto& r : rootdatum::property::run_all(seed)) {
    std::cout << (r.ok() ? "PASS " : "FAIL ") << r.name << ": " << r.trials << " trials, " << r.failures
              << " failures (" << std::fixed << std::setprecision(2) << r.seconds << " s)\n";
    if (!r.ok()) std::cout << "  first failure: " << r.first_failure << '\n';
    ok = ok && r.ok();
    total += r.seconds;
  }
  std::cout << "seed " << seed << ", total " << std::fixed << std::setprecision(2) << total << " s\n";
  return ok ? 0 : 1;
}
