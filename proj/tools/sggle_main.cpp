#include "sggl/cli.hpp"

int main(int argc, char** argv) { return sggl::run_cli(argc, argv); }
