#include <iostream>

#include "commands.hpp"

int main(int argc, char** argv)
{
    return wedgeqft::cli::main_entry(argc, argv, std::cout);
}
