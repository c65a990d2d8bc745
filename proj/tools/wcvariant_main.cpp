#include "wcvariant/cli.hpp"

int main(int argc, char** argv) { return wcv::cli::run(argc, argv); }
