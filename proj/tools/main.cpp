#include "orbitkit/cli_app.hpp"

int main(int argc, char** argv) { return orbitkit::run_cli(argc, argv); }
