#include <iostream>

#include "nsverify/cli/commands.hpp"

int main(int argc, char** argv) { return nsv::cli::run(argc, argv, std::cout, std::cerr); }
