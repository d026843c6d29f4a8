#include "ershov/cli.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    return ershov::run_cli(argc, argv, std::cout, std::cerr);
}
