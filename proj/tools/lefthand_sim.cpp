#include <iostream>

#include "lefthand/cli.hpp"

int main(int argc, char** argv)
{
    return lefthand::cli::main(argc, argv, std::cout, std::cerr);
}
