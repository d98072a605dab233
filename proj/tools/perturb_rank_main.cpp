#include <iostream>

#include "perturb_rank/cli.hpp"

int main(int argc, char** argv) {
  return perturb_rank::run_command(argc, argv, std::cout, std::cerr);
}
