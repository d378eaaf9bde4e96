#include <iostream>
#include <string>
#include <vector>

#include "deloc/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return deloc::cli::dispatch(std::move(args), std::cout, std::cerr);
}
