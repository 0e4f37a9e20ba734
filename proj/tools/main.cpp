#include "cli.hpp"

int main(int argc, char** argv) { return tpro::run_cli(argc, argv); }
