#include <iostream>

#include "gibbsqaoa/cli.hpp"

int main(int argc, char **argv) {
    return gibbsqaoa::run_cli(argc, argv, std::cout, std::cerr);
}
