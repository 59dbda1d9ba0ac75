#include <iostream>

#include "glassbridge/cli.hpp"

int main(int argc, char** argv) {
  return glassbridge::cli::main_entry(argc, argv, std::cout, std::cerr);
}
