#include <iostream>

#include "pbclink/cli.hpp"

int main(int argc, char** argv) { return pbclink::run_cli(argc, argv, std::cout, std::cerr); }
