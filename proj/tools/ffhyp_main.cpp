#include <iostream>

#include "ffhyp/cli.hpp"

int main(int argc, char** argv) {
    return ffh::run_main(argc, argv, std::cout, std::cerr);
}
