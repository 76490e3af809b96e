#include "hamflow/cli/cli.hpp"

int main(int argc, char** argv) { return hamflow::cli::run(argc, argv); }
