#include <iostream>

#include "uhsn/cli.hpp"

int main(int argc, char** argv) { return uhsn::cli::run(argc, argv, std::cout, std::cerr); }
