#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) { return wilson4::cli::run(argc, argv, std::cout, std::cerr); }
