#include "ohphase/cli.hpp"

int main(int argc, char** argv) { return ohphase::cli::run_cli(argc, argv); }
