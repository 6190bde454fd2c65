#include <iostream>

#include "mnv/cli/commands.hpp"

int main(int argc, char** argv) { return mnv::run_cli(argc, argv, std::cout, std::cerr); }
