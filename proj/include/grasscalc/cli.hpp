/* Batch front end: one subcommand per invocation, one JSON run record on
 * standard output. */
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace grasscalc::cli {

/* args excludes the program name.  Exit statuses: 0 success, 2 engine
 * error (machine-readable error object), 3 ambiguous assembly under
 * constraints-only policies, 64 usage errors. */
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace grasscalc::cli
