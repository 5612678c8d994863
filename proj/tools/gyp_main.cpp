#include <iostream>
#include <string>
#include <vector>

#include "gyp/cli_app.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return gyp::run_cli(std::move(args), std::cout, std::cerr);
}
