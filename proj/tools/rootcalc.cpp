#include "rootcalc/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return rootcalc::run_cli(argc, argv, std::cout, std::cerr); }
