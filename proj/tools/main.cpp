#include "tangentrep/cli.hpp"

int main(int argc, char** argv) { return tangentrep::cli::main(argc, argv); }
