#include <iostream>

#include "kgcert/cli.hpp"

int main(int argc, char** argv) { return kgcert::run_cli(argc, argv, std::cin, std::cout, std::cerr); }
