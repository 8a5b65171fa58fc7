#include <iostream>
#include <string>
#include <vector>

#include "rankzipf_cli/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return rankzipf::cli::run(args, std::cout, std::cerr);
}
