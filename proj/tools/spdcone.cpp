#include "cli.hpp"

int main(int argc, char** argv) { return spdcone::cli::run(argc, argv); }
