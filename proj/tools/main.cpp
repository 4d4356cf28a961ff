#include "dtppo/cli.hpp"

int main(int argc, char** argv) { return dtppo::cli_main(argc, argv); }
