#include "curvadapt/cli.hpp"

#include <cstdlib>
#include <iostream>

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    std::optional<std::string> env;
    if (const char* f = std::getenv(curvadapt::cli::kFormatEnv)) env = f;
    const auto r = curvadapt::cli::run(args, env);
    std::cout << r.out;
    std::cerr << r.err;
    return r.exit_code;
}
