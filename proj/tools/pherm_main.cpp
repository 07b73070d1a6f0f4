#include <iostream>

#include "pherm/cli.hpp"

int main(int argc, char** argv) { return pherm::cli_main(argc, argv, std::cout, std::cerr); }
