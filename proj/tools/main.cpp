#include "cavsim/cli.hpp"

int main(int argc, char** argv) { return cavsim::cli_main(argc, argv); }
