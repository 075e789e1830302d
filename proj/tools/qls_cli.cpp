#include <iostream>

#include "qls/cli.hpp"

int main(int argc, char** argv) { return qls::run_cli(argc, argv, std::cout, std::cerr); }
