#include "eit3d/cli.hpp"

int main(int argc, char** argv) { return eit3d::run_cli(argc, argv); }
