#include "infspace/cli.hpp"

int main(int argc, char** argv) { return infspace::cli::run(argc, argv); }
