#include "symtail/cli.hpp"

int main(int argc, char** argv) { return symtail::cli::main(argc, argv); }
