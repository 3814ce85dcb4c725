#include <string>
#include <vector>

#include "sieve/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return sieve::run(args);
}
