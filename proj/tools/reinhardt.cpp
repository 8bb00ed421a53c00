#include <iostream>

#include <reinhardt/cli.hpp>

int main(int argc, char **argv)
{
    return reinhardt::cli::main(argc, argv, std::cout, std::cerr);
}
