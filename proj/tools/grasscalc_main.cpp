/* Thin executable wrapper over the dispatch entry point. */
#include <iostream>
#include <string>
#include <vector>

#include "grasscalc/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return grasscalc::cli::dispatch(args, std::cout, std::cerr);
}
