#include "hedgehog/cli.hpp"

int main(int argc, char** argv) { return hedgehog::cli::run_main(argc, argv); }
