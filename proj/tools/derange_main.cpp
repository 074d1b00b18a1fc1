#include "derange/cli.hpp"

int main(int argc, char** argv) { return derange::run_cli(argc, argv); }
