#include <iostream>
#include <string>
#include <vector>

#include "ordmat/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return ordmat::run_cli(args, std::cin, std::cout, std::cerr);
}
