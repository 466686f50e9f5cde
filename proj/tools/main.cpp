#include <iostream>

#include "contologic/cli.hpp"

int main(int argc, char** argv) { return contologic::run(argc, argv, std::cout, std::cerr); }
