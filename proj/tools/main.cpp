#include "sphere/cli.hpp"

int main(int argc, char** argv) { return sphere::cli_run(argc, argv); }
