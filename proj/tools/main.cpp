#include "sandpile/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return sandpile::run_cli(argc, argv, std::cout, std::cerr); }
