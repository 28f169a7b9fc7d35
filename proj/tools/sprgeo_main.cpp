#include <iostream>
#include <string>
#include <vector>

#include "sprgeo/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return sprgeo::run_cli(args, std::cout, std::cerr);
}
