#include <iostream>

#include "cafcc/cli.hpp"

int main(int argc, char** argv) { return cafcc::run_cli(argc, argv, std::cout, std::cerr); }
