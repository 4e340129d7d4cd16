#include <iostream>

#include "expunge/cli.hpp"

int main(int argc, char** argv) { return expunge::cli::run(argc, argv, std::cout, std::cerr); }
