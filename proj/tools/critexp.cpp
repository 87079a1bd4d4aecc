#include <iostream>

#include "critexp/cli.hpp"

int main(int argc, char** argv) { return critexp::run(argc, argv, std::cout, std::cerr); }
