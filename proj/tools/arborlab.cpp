#include <iostream>

#include "arborlab/cli.hpp"

int main(int argc, char** argv) {
    return arborlab::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
