// main.cpp — floquet_zeno command-line tool

#include <iostream>

#include "floquet_zeno/cli.hpp"

int main(int argc, char** argv) {
    return floquet_zeno::cli::run(argc, argv, std::cout, std::cerr);
}
