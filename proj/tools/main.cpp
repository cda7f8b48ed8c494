#include "levycds/cli.hpp"

int main(int argc, char** argv) { return levycds::cli::main(argc, argv); }
