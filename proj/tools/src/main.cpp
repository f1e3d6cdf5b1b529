#include <iostream>

#include "sasakilab/commands.hpp"

int main(int argc, char** argv) { return sasakilab::run_cli(argc, argv, std::cout, std::cerr); }
