#include "cli.hpp"

int main(int argc, char** argv) { return polycollatz::cli::run(argc, argv); }
