#include "chshdyn/cli.hpp"

int main(int argc, char** argv) { return chshdyn::cli::main_entry(argc, argv); }
