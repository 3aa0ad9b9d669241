#include "hardy/cli.hpp"

int main(int argc, char** argv) { return hardy::cli::run(argc, argv); }
