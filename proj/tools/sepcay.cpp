#include <iostream>
#include <string>
#include <vector>

#include "sepcay/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  return sepcay::run_cli(args, std::cout);
}
