#include <iostream>
#include <string>
#include <vector>

#include "radoq/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return radoq::dispatch(args, std::cout, std::cerr);
}
