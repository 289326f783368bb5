#include <iostream>
#include <string>
#include <vector>

#include "bsbsim/commands.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return bsbsim::run_cli(args, std::cout, std::cerr);
}
