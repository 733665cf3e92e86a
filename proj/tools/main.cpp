#include "cli.hpp"

int main(int argc, char** argv) {
    return trilinea::cli::run_cli(argc, argv);
}
