#include "kspace_cli/app.hpp"

#include <iostream>

int main(int argc, char** argv) {
    return kspace::cli::main_entry(argc, argv, std::cout, std::cerr);
}
