#include <iostream>
#include <string>
#include <vector>

#include "pfx_cli/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return pfx::cli::run(args, std::cout, std::cerr);
}
