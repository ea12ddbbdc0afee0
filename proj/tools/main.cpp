#include <iostream>

#include "skewinfo/cli.hpp"

int main(int argc, char** argv) {
    return skewinfo::cli::run(argc, argv, std::cout, std::cerr);
}
