#include <iostream>

#include "rotquad/cli.hpp"

int main(int argc, char** argv) { return rotquad::cli::run(argc, argv, std::cout, std::cerr); }
