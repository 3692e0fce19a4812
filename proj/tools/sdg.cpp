#include <iostream>

#include "sdg/cli/run.hpp"

int main(int argc, char** argv) { return sdg::cli::run_cli(argc, argv, std::cout, std::cerr); }
