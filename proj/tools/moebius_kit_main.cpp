#include <iostream>
#include <string>
#include <vector>

#include "moebius_kit/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return moebius_kit::cli::run(args, std::cout, std::cerr);
}
