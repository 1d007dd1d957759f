#include "wfc/cli.hpp"

int main(int argc, char** argv) { return wfc::cli::run(argc, argv); }
