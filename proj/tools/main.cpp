#include "cli.hpp"

int main(int argc, char** argv) { return zetadiv::cli_main(argc, argv); }
