#include <iostream>
#include <string>
#include <vector>

#include "matnorm/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return matnorm::cli::run(args, std::cout, std::cerr);
}
