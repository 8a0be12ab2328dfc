#include <iostream>
#include <string>
#include <vector>

#include "propdec/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return propdec::cli_dispatch(args, std::cout, std::cerr);
}
