#include <iostream>
#include <string>
#include <vector>

#include "blockrec/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  return blockrec::run_cli(args, std::cout, std::cerr);
}
