#include <iostream>
#include <string>
#include <vector>

#include "satmat/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return satmat::dispatch(args, std::cout, std::cerr);
}
