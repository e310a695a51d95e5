#pragma once

#include <iosfwd>
#include <span>
#include <string>

namespace asksport {

/// Entry point shared by the asksport binary and the tests.
/// Subcommands: ingest, index, ask, serve, eval. Returns 0 on success, 1 on a
/// usage or input error, 2 on an internal error.
int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err);

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace asksport
