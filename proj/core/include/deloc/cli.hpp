#ifndef DELOC_CLI_HPP
#define DELOC_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace deloc::cli {

/// Run one command (arguments without the program name). On success a single
/// JSON document {result, diagnostics, run_record} is written to `out`.
/// Returns 0 on success, 2 on input errors, 3 on convergence failures.
int dispatch(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace deloc::cli

#endif
