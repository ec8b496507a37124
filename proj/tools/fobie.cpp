#include <iostream>

#include "fobie/cli.hpp"

int main(int argc, char** argv) { return fobie::cli::run(argc, argv, std::cout, std::cerr); }
