#include <iostream>

#include "isospin/cli.hpp"

int main(int argc, char** argv) { return isospin::run_cli(argc, argv, std::cout, std::cerr); }
