// Dedicated verification binary: runs every criterion end-to-end and prints
// one pass/fail line per criterion. Exit code 0 iff all pass.

#include <cstring>
#include <iostream>

#include "magspec/accept.hpp"

int main(int argc, char** argv) {
  magspec::AcceptOptions opt;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--fast") == 0) opt.fast = true;
  }
  auto results = magspec::run_acceptance(opt, &std::cout);
  int failed = 0;
  for (const auto& r : results)
    if (!r.pass) ++failed;
  if (failed == 0) {
    std::cout << "all criteria passed\n";
    return 0;
  }
  std::cout << failed << " criteria failed\n";
  return 1;
}
