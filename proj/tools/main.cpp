#include "glvnet/cli.hpp"

int main(int argc, char** argv) {
    return glvnet::cli::dispatch(argc, argv);
}
