#include <iostream>
#include <string>
#include <vector>

#include "choicone/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return choicone::run(args, std::cout, std::cerr);
}
