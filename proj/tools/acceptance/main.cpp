#include <cstdlib>
#include <iostream>
#include <string>

#include "rslab/cli/acceptance.hpp"

int main(int argc, char** argv) {
  const std::filesystem::path config = argc > 1 ? argv[1] : RSLAB_DEFAULT_ACCEPTANCE_CONFIG;
  const int threads = argc > 2 ? std::stoi(argv[2]) : 1;
  try {
    const auto results = rslab::cli::run_acceptance(config, threads);
    return rslab::cli::print_scoreboard(std::cout, results) ? EXIT_SUCCESS : EXIT_FAILURE;
  } catch (const std::exception& e) {
    std::cerr << "rslab_acceptance: " << e.what() << '\n';
    return 2;
  }
}
