#include <string>
#include <vector>

#include "gridlab/cli.hpp"

int main(int argc, char** argv) {
    return gridlab::run_cli(std::vector<std::string>(argv + 1, argv + argc));
}
