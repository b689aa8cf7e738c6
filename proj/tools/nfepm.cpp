#include "runner.hpp"

#include <iostream>

int main(int argc, char** argv) { return nfepm::cli::run_cli(argc, argv, std::cout, std::cerr); }
