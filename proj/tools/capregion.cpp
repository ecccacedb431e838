#include <iostream>
#include <string>
#include <vector>

#include "capregion/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return capregion::cli::run(args, std::cout, std::cerr);
}
