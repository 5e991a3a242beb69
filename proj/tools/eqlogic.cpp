#include "eqlogic/cli.hpp"

int main(int argc, char** argv) { return eqlogic::cli::run(argc, argv); }
