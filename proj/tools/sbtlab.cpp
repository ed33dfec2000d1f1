#include "sbtlab/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return sbt::cli::run(argc, argv, std::cout, std::cerr); }
