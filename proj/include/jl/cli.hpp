#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace jl {

/// Entry point for the jl_experiments tool. Subcommands: sweep-s, sweep-t,
/// cdf, sweep-k, verify, required-k. Returns 0 on success, 2 on invalid
/// arguments, 1 when verification checks fail or a run errors out.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Same, with args[0] taken as the program name.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace jl
