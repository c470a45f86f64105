#include "cbounds/commands.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    return cbounds::run_cli(argc, argv, std::cout, std::cerr);
}
