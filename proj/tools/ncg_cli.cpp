#include <iostream>

#include "ncg/cli.hpp"

int main(int argc, char** argv) { return ncg::cli::run(argc, argv, std::cout, std::cerr); }
