#include "lks/cli.hpp"

int main(int argc, char** argv) { return lks::lks_main(argc, argv); }
