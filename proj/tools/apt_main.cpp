#include "apt/cli.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    return apt::cli::run(argc, argv, std::cout, std::cerr);
}
