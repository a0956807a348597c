#include <iostream>

#include "perc_tools/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return perc::tools::run_cli(args, std::cout, std::cerr);
}
