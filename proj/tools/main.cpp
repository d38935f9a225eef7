#include <string>
#include <vector>

#include "mdpreach/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return mdpreach::run_cli(args);
}
