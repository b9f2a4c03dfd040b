#include <iostream>

#include "operad/cli.hpp"

int main(int argc, char** argv) { return operad::run_cli(argc, argv, std::cout, std::cerr); }
