#include <iostream>

#include "maxcoh/cli.hpp"

int main(int argc, char** argv) { return maxcoh::cli::run_cli(argc, argv, std::cout, std::cerr); }
