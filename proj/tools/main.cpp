#include <iostream>

#include "transferkit/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return transferkit::run_cli(args, std::cout, std::cerr);
}
