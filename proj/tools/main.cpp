#include "bksat/cli.hpp"

int main(int argc, char **argv) { return bksat::cli_main(argc, argv); }
