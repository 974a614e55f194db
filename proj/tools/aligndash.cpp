#include <iostream>

#include "aligndash/cli.hpp"

int main(int argc, char** argv) { return aligndash::run(argc, argv, std::cout, std::cerr); }
