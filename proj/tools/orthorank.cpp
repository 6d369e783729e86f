#include <iostream>

#include "orthorank/cli.hpp"

int main(int argc, char** argv) {
  return orthorank::cli::run({argv + 1, argv + argc}, std::cout, std::cerr);
}
