#include <cstdlib>
#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) {
    return solvext::cli::run(argc, argv, std::cout, std::cerr,
                             std::getenv(solvext::cli::kFormatEnvVar));
}
