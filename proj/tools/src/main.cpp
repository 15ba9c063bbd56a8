#include <iostream>
#include <string>
#include <vector>

#include "rfqc/cli/experiments.hpp"

int main(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    return rfqc::cli::run(args, std::cout, std::cerr);
}
