#include <iostream>

#include "deforma/cli.hpp"

int main(int argc, char** argv) { return deforma::cli::run(argc, argv, std::cout, std::cerr); }
