#include "hardy/cli.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    return hardy::cli::main(argc, argv, std::cout, std::cerr);
}
