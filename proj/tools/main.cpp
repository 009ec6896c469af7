#include <iostream>

#include "relcalc/cli.hpp"

int main(int argc, char** argv) {
  return relcalc::run_command({argv + 1, argv + argc}, std::cout, std::cerr);
}
