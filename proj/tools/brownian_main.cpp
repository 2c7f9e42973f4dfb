#include <iostream>

#include "brownian/cli.hpp"

int main(int argc, char** argv) { return brownian::cli::run(argc, argv, std::cout, std::cerr); }
