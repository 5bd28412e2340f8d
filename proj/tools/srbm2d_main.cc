#include <iostream>
#include <string>
#include <vector>

#include "srbm2d/cli.h"

int main(int argc, char** argv) {
  return srbm2d::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
