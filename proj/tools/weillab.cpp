#include <iostream>

#include "weil/cli.hpp"

int main(int argc, char** argv) { return weil::cli_main(argc, argv, std::cout, std::cerr); }
