#include "qgroupoid/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return qgroupoid::cli::run(argc, argv, std::cout, std::cerr); }
