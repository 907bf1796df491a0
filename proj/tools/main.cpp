#include <iostream>

#include "minkowski/cli.hpp"

int main(int argc, char** argv) {
  return minkowski::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
