#include <magicdist/cli.hpp>

int main(int argc, char** argv) { return magicdist::run_cli(argc, argv); }
