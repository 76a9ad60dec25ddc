#include "bsl/cli.hpp"

int main(int argc, char** argv) { return bsl::run_cli(argc, argv); }
