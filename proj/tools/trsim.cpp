#include <iostream>

#include "trsim/cli.hpp"

int main(int argc, char** argv) { return trsim::cli::run_cli(argc, argv, std::cout, std::cerr); }
