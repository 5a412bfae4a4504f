#include <iostream>
#include <string>
#include <vector>

#include "rcskit/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    return rcskit::cli::run(args, std::cout, std::cerr);
}
