#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace omega::acceptance {

struct Criterion {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

struct Options {
  std::uint64_t seed = 20240601;
  std::vector<int> only;  // empty runs all ten
};

std::vector<Criterion> run(const Options& options);

// "[PASS] 3 free symmetrization: ..." style line.
std::string format(const Criterion& c);

}  // namespace omega::acceptance
