#include <iostream>

#include "taco/cli.hpp"

int main(int argc, char** argv) { return taco::run_cli(argc, argv, std::cout, std::cerr); }
