#include <iostream>

#include "kcollapse/cli.hpp"

int main(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    return kcollapse::run(args, std::cout, std::cerr);
}
