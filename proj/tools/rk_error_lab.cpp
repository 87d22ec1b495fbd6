#include <iostream>
#include <string>
#include <vector>

#include "rklab/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return rklab::cli_main(args, std::cout, std::cerr);
}
