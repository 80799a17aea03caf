#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace symucc::cli {

/// Run the command line. Returns 0 on success, 1 on domain errors (reported
/// on `err` as a one-line JSON object) and 2 on usage errors.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace symucc::cli
