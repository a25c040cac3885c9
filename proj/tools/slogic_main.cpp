#include <iostream>
#include <string>
#include <vector>

#include "slogic/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return slogic::cli::run(args, std::cout, std::cerr);
}
