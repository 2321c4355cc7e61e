#include "resonance/cli.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    return resonance::run_cli(argc, argv, std::cout, std::cerr);
}
