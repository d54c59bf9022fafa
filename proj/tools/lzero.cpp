#include "lzero/cli.hpp"

int main(int argc, char** argv) { return lzero::run_cli(argc, argv); }
