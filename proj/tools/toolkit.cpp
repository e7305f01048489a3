#include <iostream>

#include "toolkit/cli.hpp"

int main(int argc, char** argv) { return toolkit::run_cli(argc, argv, std::cout, std::cerr); }
