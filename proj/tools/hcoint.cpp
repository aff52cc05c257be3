#include <iostream>

#include "hcoint/cli.hpp"

int main(int argc, char** argv) {
    return hcoint::run_cli({argv + 1, argv + argc}, std::cout, std::cerr);
}
