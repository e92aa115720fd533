#include <iostream>
#include <string>
#include <vector>

#include "qgkit/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return qgkit::run_cli(args, std::cout, std::cerr);
}
