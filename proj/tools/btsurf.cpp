#include "cli.hpp"

int main(int argc, char** argv) { return btsurf::cli::main_entry(argc, argv); }
