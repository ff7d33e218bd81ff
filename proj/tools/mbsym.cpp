#include "mbsym/cli.hpp"

int main(int argc, char** argv) { return mbsym::cli::run(argc, argv); }
