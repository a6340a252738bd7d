#include "drivestyle/cli.hpp"

int main(int argc, char** argv) { return drivestyle::cli::run(argc, argv); }
