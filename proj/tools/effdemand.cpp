#include <iostream>

#include "effdemand/cli.hpp"

int main(int argc, char** argv) {
  return effdemand::run_cli(argc, argv, std::cout, std::cerr);
}
