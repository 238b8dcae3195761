#include <iostream>

#include "tabsolve/cli.hpp"

int main(int argc, char** argv) {
  return tabsolve::run_cli(argc, argv, std::cout, std::cerr);
}
