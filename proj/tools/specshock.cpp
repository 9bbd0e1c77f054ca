#include <iostream>

#include "specshock/cli.hpp"

int main(int argc, char** argv) {
  return specshock::cli_main(argc, argv, std::cout, std::cerr);
}
