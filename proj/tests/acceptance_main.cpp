// Dedicated acceptance runner: one pass/fail line per criterion, exit 0 only
// when every selected criterion passes.
//
//   fastdiff_acceptance [--seed N] [--only ID]... [--skip ID]...

#include <cstdint>
#include <cstdlib>
#include <cstring>
#include <iostream>
#include <vector>

#include "fastdiff/acceptance.hpp"

int main(int argc, char** argv) {
  std::uint64_t seed = 12345;
  std::vector<int> only, skip;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    auto next = [&]() -> const char* {
      if (i + 1 >= argc) {
        std::cerr << arg << " needs a value\n";
        std::exit(2);
      }
      return argv[++i];
    };
    if (arg == "--seed") {
      seed = std::strtoull(next(), nullptr, 10);
    } else if (arg == "--only") {
      only.push_back(std::atoi(next()));
    } else if (arg == "--skip") {
      skip.push_back(std::atoi(next()));
    } else {
      std::cerr << "unknown argument " << arg << "\n";
      return 2;
    }
  }

  const auto results = fastdiff::run_acceptance(seed, only, skip, &std::cout);
  if (results.empty()) {
    std::cerr << "no criteria selected\n";
    return 2;
  }
  return fastdiff::all_passed(results) ? 0 : 1;
}
