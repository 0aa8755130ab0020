#include "rarbench/cli.hpp"

int main(int argc, char** argv) { return rarbench::cli::run(argc, argv); }
