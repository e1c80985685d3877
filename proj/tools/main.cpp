#include <iostream>

#include "wallsun/cli.hpp"

int main(int argc, char** argv) { return wallsun::cli::run(argc, argv, std::cout, std::cerr); }
