#include <iostream>

#include "cdelta/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return cdelta::execute_command(args, std::cout, std::cerr);
}
