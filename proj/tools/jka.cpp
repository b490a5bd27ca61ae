#include <iostream>

#include "jka/report.hpp"

int main(int argc, char** argv) { return jka::run_cli(argc, argv, std::cout, std::cerr); }
