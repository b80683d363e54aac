#include <iostream>

#include "fmmbound/cli.hpp"

int main(int argc, char** argv) {
  return fmmbound::cli::run(argc, argv, std::cout, std::cerr);
}
