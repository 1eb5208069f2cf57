#include <iostream>

#include "superopt/cli.hpp"

int main(int argc, char** argv) { return superopt::run(argc, argv, std::cout, std::cerr); }
