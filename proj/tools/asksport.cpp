#include "asksport/cli.hpp"

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <iostream>

int main(int argc, char** argv) {
    // Diagnostics go to stderr so stdout stays machine readable.
    spdlog::set_default_logger(spdlog::stderr_color_mt("asksport"));
    return asksport::run_cli(argc, argv, std::cout, std::cerr);
}
