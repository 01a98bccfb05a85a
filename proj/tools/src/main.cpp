#include <iostream>

#include "selk/cli/cli.hpp"

int main(int argc, char** argv) { return selk::cli::run(argc, argv, std::cout, std::cerr); }
