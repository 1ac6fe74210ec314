#include <iostream>

#include "pacba/cli.hpp"

int main(int argc, char** argv) { return pacba::run_cli(argc, argv, std::cout, std::cerr); }
