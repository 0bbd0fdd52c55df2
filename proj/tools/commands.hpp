#ifndef REEB_TOOLS_COMMANDS_HPP
#define REEB_TOOLS_COMMANDS_HPP

#include <ostream>
#include <string>
#include <vector>

namespace reeb::cli {

/**
 * Runs one `reeb-eh` invocation; args excludes the program name. Exit codes: 0 success,
 * 1 unknown subcommand, failed verification or unconverged solver, 2 malformed arguments or
 * JSON, 3 semantic validation failure.
 */
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

std::string usage();

}  // namespace reeb::cli

#endif
