#include <unistd.h>

#include <iostream>

#include "traitproof/cli.hpp"

int main(int argc, char** argv) {
    std::ios::sync_with_stdio(false);
    const std::vector<std::string> args(argv + 1, argv + argc);
    const traitproof::cli::Io io{std::cout, std::cerr, isatty(STDOUT_FILENO) != 0};
    try {
        return traitproof::cli::run(args, io);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return traitproof::cli::kUsageError;
    }
}
