#include <iostream>
#include <string>
#include <vector>

#include "hopfbound/app/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return hopfbound::app::cli_main(args, std::cout, std::cerr, hopfbound::app::process_environment());
}
