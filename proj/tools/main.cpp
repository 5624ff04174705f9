#include <iostream>
#include <string>
#include <vector>

#include "powerwise/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    return powerwise::run_cli(args, std::cout, std::cerr);
}
