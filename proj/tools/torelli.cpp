#include <iostream>
#include <string>
#include <vector>

#include "torelli/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return torelli::run_cli(args, std::cout, std::cerr);
}
