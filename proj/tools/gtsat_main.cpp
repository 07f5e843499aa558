#include "gtsat/cli.hpp"

int main(int argc, char** argv) { return gtsat::cli_main(argc, argv); }
