#include <iostream>

#include "bvperiod_cli/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return bvperiod::cli::run(args, std::cout, std::cerr);
}
