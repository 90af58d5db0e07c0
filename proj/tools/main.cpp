#include "adderlab/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return adderlab::run_cli(args, std::cout, std::cerr);
}
