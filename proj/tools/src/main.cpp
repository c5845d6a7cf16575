#include <exception>
#include <iostream>

#include "lambdaes_cli/commands.hpp"

int main(int argc, char** argv) {
  try {
    return lambdaes::cli::run(argc, argv, std::cout, std::cerr);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
