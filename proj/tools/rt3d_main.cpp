#include <vector>

#include "rt3d/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return rt3d::rt3d_cli_main(args);
}
