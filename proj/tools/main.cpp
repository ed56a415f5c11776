#include <iostream>

#include "dharm/cli.hpp"

int main(int argc, char** argv) { return dharm::run_cli(argc, argv, std::cout, std::cerr); }
