#include <iostream>

#include "symucc/cli.hpp"

int main(int argc, char** argv) { return symucc::cli::run(argc, argv, std::cout, std::cerr); }
