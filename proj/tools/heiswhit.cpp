#include <iostream>

#include "heiswhit/cli.hpp"

int main(int argc, char** argv) { return heiswhit::cli::main(argc, argv, std::cout, std::cerr); }
