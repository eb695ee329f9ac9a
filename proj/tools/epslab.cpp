#include <iostream>

#include "epslab/cli.hpp"

int main(int argc, char** argv) { return epslab::run_cli(argc, argv, std::cout, std::cerr); }
