#include <iostream>

#include "eznav_cli/commands.hpp"

int main(int argc, char** argv) { return eznav::cli::run(argc, argv, std::cout, std::cerr); }
