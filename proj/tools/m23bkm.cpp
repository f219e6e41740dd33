#include <iostream>

#include "m23bkm/cli.hpp"

int main(int argc, char** argv) { return m23bkm::cli::run(argc, argv, std::cout, std::cerr); }
