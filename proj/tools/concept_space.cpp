#include <iostream>

#include "cspace/cli.hpp"

int main(int argc, char** argv) {
    return cspace::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
