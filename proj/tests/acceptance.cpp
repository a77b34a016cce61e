// Runs every acceptance criterion at its stated tolerance; one line each.
#include <cstdlib>
#include <iostream>

#include "hilltongue/verify.hpp"

int main(int argc, char** argv) {
  const int threads = argc > 1 ? std::atoi(argv[1]) : 0;
  const auto checks = hilltongue::acceptance_suite(threads);
  hilltongue::print_checks(std::cout, checks, true);
  const bool ok = hilltongue::all_passed(checks);
  std::cout << (ok ? "acceptance: all criteria passed" : "acceptance: FAILED") << "\n";
  return ok ? EXIT_SUCCESS : EXIT_FAILURE;
}
