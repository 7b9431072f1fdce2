#include <iostream>

#include "robotsp/cli.hpp"

int main(int argc, char** argv) { return robotsp::cli::run(argc, argv, std::cout, std::cerr); }
