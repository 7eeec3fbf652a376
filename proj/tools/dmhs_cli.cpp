#include "cli_app.hpp"

int main(int argc, char** argv) { return dmhs::cli::run(argc, argv); }
