#include <iostream>

#include "gaussent/cli.hpp"

int main(int argc, char** argv) {
  return gaussent::cli::run(argc, argv, std::cout, std::cerr);
}
