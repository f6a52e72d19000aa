#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace spdc {

// Command-line front end. args excludes the program name. Results go to the
// requested sink (--out or `out`); `err` carries diagnostics only.
// Returns 0 on success, 1 on usage errors, 2 on numeric failures.
// Identical inputs produce byte-identical output.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace spdc
