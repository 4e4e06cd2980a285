#include <iostream>
#include <vector>

#include "cfk/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return cfk::run_cli(args, std::cout, std::cerr);
}
