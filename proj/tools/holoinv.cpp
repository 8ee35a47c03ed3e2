#include "holoinv/commands.hpp"

#include <iostream>

int main(int argc, char** argv) {
    return holoinv::cli::main_entry({argv + 1, argv + argc}, std::cout, std::cerr);
}
