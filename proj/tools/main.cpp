#include <iostream>

#include "bcs/cli.hpp"

int main(int argc, char** argv) { return bcs::cli_main(argc, argv, std::cout, std::cerr); }
