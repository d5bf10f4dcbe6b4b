// Copyright (c) probbounds contributors.
// SPDX-License-Identifier: Apache-2.0
#include <iostream>

#include "commands.hpp"

int main(int argc, char** argv) { return probbounds::app::run(argc, argv, std::cout, std::cerr); }
