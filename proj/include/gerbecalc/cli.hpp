#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gerbecalc {

/// Subcommand names, in dispatch-table order.
std::vector<std::string> cli_commands();

/// Runs one invocation; args excludes the program name. The JSON document
/// (or the {code, message} error object of a domain failure) goes to out;
/// usage messages go to err. Returns 0 on success, 1 on a domain error and
/// 2 on a usage error (unknown type string, malformed rational, malformed
/// input file, bad flags).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gerbecalc
