#include <iostream>
#include <string>
#include <vector>

#include "fracpass/cli.hpp"

int main(int argc, char** argv) {
    const std::vector<std::string> args(argv + 1, argv + argc);
    return fracpass::run_cli(args, std::cout, std::cerr);
}
