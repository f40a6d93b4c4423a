#include <iostream>

#include "jumprl/cli.hpp"

int main(int argc, char** argv) { return jumprl::run_cli(argc, argv, std::cout, std::cerr); }
