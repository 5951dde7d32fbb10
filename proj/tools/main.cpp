#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) { return eag::cliMain(argc, argv, std::cout, std::cerr); }
