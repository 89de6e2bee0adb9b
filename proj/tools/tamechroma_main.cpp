#include <iostream>
#include <string>
#include <vector>

#include "tamechroma/cli_core.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return tamechroma::run_cli(args, std::cout, std::cerr);
}
