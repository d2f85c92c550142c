#include "loopdnp/cli.hpp"

int main(int argc, char** argv) { return loopdnp::cli_main(argc, argv); }
