#include "dlpgal/cli_main.hpp"

int main(int argc, char** argv) { return dlpgal::cli::run(argc, argv); }
