#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bksat {

/// Entry point of the bksat command-line tool. Returns 0 on success, 2 on a
/// usage error and 1 on a runtime error.
int cli_main(int argc, const char *const *argv);
int cli_main(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace bksat
