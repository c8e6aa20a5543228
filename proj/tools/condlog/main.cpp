#include <iostream>

#include "condlog/cli.hpp"

int main(int argc, char** argv) { return condlog::run_cli(argc, argv, std::cout, std::cerr); }
