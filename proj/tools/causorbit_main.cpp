#include <iostream>
#include <string>
#include <vector>

#include "causorbit/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv, argv + argc);
  return causorbit::cli::run_cli(args, std::cout, std::cerr);
}
