#include "cli.hpp"

int main(int argc, char** argv) { return curvehedge::cli::main_entry(argc, argv); }
