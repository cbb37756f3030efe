#include "twistcat/cli.h"

#include <iostream>
#include <string>
#include <vector>

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return twistcat::cli::run(args, std::cout, std::cerr);
}
