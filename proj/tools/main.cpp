#include <vasrev/cli.hpp>

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return vasrev::cli::cli_dispatch(std::move(args), std::cout, std::cerr);
}
