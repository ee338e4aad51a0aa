#include <iostream>
#include <string>
#include <vector>

#include "amoebot/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return amoebot::cli::main(args, std::cout, std::cerr);
}
