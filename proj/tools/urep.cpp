#include <iostream>

#include "urep/cli.hpp"

int main(int argc, char** argv) {
    return urep::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
