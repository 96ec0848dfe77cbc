#include "logicepp/cli.hpp"

int main(int argc, char** argv) { return logicepp::run_cli(argc, argv); }
