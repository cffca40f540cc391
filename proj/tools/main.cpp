// SPDX-License-Identifier: Apache-2.0
#include <iostream>

#include "iodir/cli.hpp"

int main(int argc, char** argv) { return iodir::cli::run(argc, argv, std::cout, std::cerr); }
