#include "cdlab/cli.hpp"

int main(int argc, char** argv) { return cdlab::cli::run_cli(argc, argv); }
