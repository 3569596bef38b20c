#include "lgcone/cli.hpp"

int main(int argc, char** argv) { return lgcone::run_cli(argc, argv); }
