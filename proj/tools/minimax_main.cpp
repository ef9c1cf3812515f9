#include <iostream>
#include <string>
#include <vector>

#include "minimax/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return minimax::cli::run(args, std::cout, std::cerr);
}
