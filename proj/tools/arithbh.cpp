#include "arithbh/cli.hpp"

int main(int argc, char** argv) { return arithbh::cli::run(argc, argv); }
