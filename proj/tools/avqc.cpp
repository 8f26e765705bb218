#include <iostream>
#include <string>
#include <vector>

#include "avqc/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return avqc::run_cli(args, std::cout, std::cerr);
}
