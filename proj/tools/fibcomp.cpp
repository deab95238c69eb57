#include <iostream>

#include "fibcomp/cli.hpp"

int main(int argc, char** argv) { return fibcomp::cli::run(argc, argv, std::cout, std::cerr); }
