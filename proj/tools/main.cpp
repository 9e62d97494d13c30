#include "csbsd/harness.hpp"

int main(int argc, char** argv) { return csbsd::harness_cli::cli_main(argc, argv); }
