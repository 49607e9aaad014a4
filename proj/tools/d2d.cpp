#include "d2d/cli/commands.hpp"

int main(int argc, char** argv) { return d2d::cli::run(argc, argv); }
