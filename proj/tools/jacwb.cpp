#include <iostream>

#include "jacwb/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return jacwb::cli::run(args, std::cout, std::cerr);
}
