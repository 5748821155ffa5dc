#include <iostream>

#include "ltlnorm/cli.hpp"

int main(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    return ltlnorm::run_cli(args, std::cout, std::cerr);
}
