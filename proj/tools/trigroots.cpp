#include <iostream>
#include <string>
#include <vector>

#include "trigroots/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return trigroots::run_cli(args, std::cout, std::cerr);
}
