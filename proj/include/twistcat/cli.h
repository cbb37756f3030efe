// Command-line front end.  run() is the real entry point so tests can
// invoke subcommands in-process and capture streams.
//
// Subcommands: algebra, apply, entropy, polyentropy, verify.  Exit codes:
// 0 success / all checks passed, 1 a numeric or verification check failed,
// 2 usage or domain error.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace twistcat::cli {

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace twistcat::cli
