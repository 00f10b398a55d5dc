#include <iostream>

#include "fisr/cli.hpp"

int main(int argc, char** argv) { return fisr::cli::main(argc, argv, std::cout, std::cerr); }
