#include <cstdlib>
#include <iostream>
#include <string>

#include "omega/tools/acceptance.hpp"

int main(int argc, char** argv) {
  omega::acceptance::Options options;
  for (int i = 1; i < argc; ++i) {
    std::string arg = argv[i];
    if (arg == "--seed" && i + 1 < argc) {
      options.seed = std::stoull(argv[++i]);
    } else if (arg == "--only" && i + 1 < argc) {
      options.only.push_back(std::stoi(argv[++i]));
    } else {
      std::cerr << "usage: omega_acceptance [--seed N] [--only ID]...\n";
      return 2;
    }
  }
  bool all = true;
  for (const auto& c : omega::acceptance::run(options)) {
    std::cout << omega::acceptance::format(c) << std::endl;
    all = all && c.passed;
  }
  return all ? EXIT_SUCCESS : EXIT_FAILURE;
}
