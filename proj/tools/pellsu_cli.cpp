#include <iostream>

#include "pellsu/cli.hpp"

int main(int argc, char** argv) { return pellsu::cli::dispatch(argc, argv, std::cout, std::cerr); }
