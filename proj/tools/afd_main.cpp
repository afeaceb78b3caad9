#include <iostream>

#include "afd/cli.hpp"

int main(int argc, char** argv) { return afd::run_cli(argc, argv, std::cout, std::cerr); }
