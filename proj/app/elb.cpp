#include <iostream>

#include "elb/cli.hpp"

int main(int argc, char** argv) { return elb::cli::run(argc, argv, std::cout, std::cerr); }
