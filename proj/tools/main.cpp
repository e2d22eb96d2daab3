#include <iostream>

#include "ktgraph_cli/commands.hpp"

int main(int argc, char** argv) { return ktg::cli::run(argc, argv, std::cout, std::cerr); }
