#include <cstdlib>
#include <iostream>
#include <string>

#include "amalg/acceptance.hpp"

int main(int argc, char** argv) {
  auto level = amalg::acceptance::Level::full;
  std::uint64_t seed = 20240607;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--quick") level = amalg::acceptance::Level::quick;
    else if (a.rfind("--seed=", 0) == 0) seed = std::strtoull(a.c_str() + 7, nullptr, 10);
  }
  int failed = 0;
  amalg::acceptance::run_all(level, seed, [&](const amalg::acceptance::Result& r) {
    std::cout << amalg::acceptance::format(r) << std::endl;
    failed += r.pass ? 0 : 1;
  });
  std::cout << (failed == 0 ? "ALL CRITERIA PASS" : std::to_string(failed) + " CRITERIA FAIL") << std::endl;
  return failed == 0 ? 0 : 1;
}
