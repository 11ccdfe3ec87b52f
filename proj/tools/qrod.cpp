#include <iostream>

#include "qrod/cli.hpp"

int main(int argc, char** argv) { return qrod::cli::run(argc, argv, std::cout, std::cerr); }
