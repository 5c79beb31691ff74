#include "wavecascade/harness/cli.hpp"

int main(int argc, char** argv) { return wavecascade::cli_main(argc, argv); }
