#include "ymstrata/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return ymstrata::cli::run(argc, argv, std::cout, std::cerr); }
