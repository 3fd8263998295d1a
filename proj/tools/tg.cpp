#include <iostream>
#include <string>
#include <vector>

#include "tg/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return tg::cli::run(args, std::cout, std::cerr);
}
