#include "cli.h"

#include <iostream>

int main(int argc, char** argv)
{
    return epilog::cli::run(argc, argv, std::cout, std::cerr);
}
