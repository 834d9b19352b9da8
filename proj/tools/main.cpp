#include <iostream>
#include <string>
#include <vector>

#include "gspace/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return gspace::run_cli(args, std::cout, std::cerr);
}
