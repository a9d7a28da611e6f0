#include <iostream>
#include <string>
#include <vector>

#include "ccslab/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return ccslab::cli::run(args, std::cout, std::cerr);
}
