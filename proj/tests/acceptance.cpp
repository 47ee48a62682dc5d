// One line per acceptance criterion; the exit status is nonzero if any fails.
#include <cstdio>
#include <cstdlib>
#include <string>

#include "a2surf/acceptance.hpp"

int main(int argc, char** argv) {
  std::uint64_t seed = a2surf::kDefaultSeed;
  if (argc > 1) seed = std::strtoull(argv[1], nullptr, 10);
  bool all = true;
  for (const auto& r : a2surf::run_acceptance(seed)) {
    all = all && r.pass;
    std::printf("criterion %2d %s  %s: %s (%.2f s)\n", r.id, r.pass ? "PASS" : "FAIL", r.name.c_str(),
                r.detail.c_str(), r.seconds);
  }
  std::printf("%s\n", all ? "all criteria pass" : "some criteria fail");
  return all ? 0 : 1;
}
