#include "roadwheel/cli.hpp"

int main(int argc, char** argv) { return roadwheel::run_cli(argc, argv); }
