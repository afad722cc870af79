#include <cstdlib>
#include <cstring>
#include <iostream>

#include "bnc/acceptance.hpp"

int main(int argc, char** argv) {
  bnc::AcceptanceOptions opt;
  for (int i = 1; i < argc; ++i) {
    if (!std::strcmp(argv[i], "--jobs") && i + 1 < argc) opt.jobs = std::atoi(argv[++i]);
    else if (!std::strcmp(argv[i], "--only") && i + 1 < argc) opt.only.insert(std::atoi(argv[++i]));
    else {
      std::cerr << "usage: acceptance [--jobs N] [--only ID]...\n";
      return 2;
    }
  }
  auto results = bnc::run_acceptance(opt);
  int passed = 0;
  for (const auto& r : results) {
    std::cout << bnc::format_result(r) << "\n";
    passed += r.pass;
  }
  std::cout << passed << "/" << results.size() << " criteria pass\n";
  return bnc::acceptance_ok(results) ? 0 : 1;
}
