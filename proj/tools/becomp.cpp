#include "becomp/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return becomp::cli::run(argc, argv, std::cout, std::cerr); }
