#include "rydmix/cli.hpp"

int main(int argc, char** argv) { return rydmix::cli::main(argc, argv); }
