#include <iostream>

#include "cli.h"

int main(int argc, char** argv) {
  return panelfusion::RunCli(argc, argv, std::cout, std::cerr);
}
