#include <iostream>

#include "jl/cli.hpp"

int main(int argc, char** argv) { return jl::cli_main(argc, argv, std::cout, std::cerr); }
