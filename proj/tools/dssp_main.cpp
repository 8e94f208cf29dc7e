#include <iostream>
#include <string>
#include <vector>

#include "dssp/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return dssp::cli::dispatch(args, std::cout, std::cerr);
}
