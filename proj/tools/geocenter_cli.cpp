#include "geocenter/io.hpp"

int main(int argc, char** argv) { return geocenter::run_cli(argc, argv); }
