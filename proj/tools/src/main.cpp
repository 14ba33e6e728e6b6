// Copyright 2026 The jungck-fp Authors
// SPDX-License-Identifier: Apache-2.0

#include <iostream>

#include "jfp_tools/cli.hpp"

int main(int argc, char** argv) { return jfp::cli::run(argc, argv, std::cout, std::cerr); }
