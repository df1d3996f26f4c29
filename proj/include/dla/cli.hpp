#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dla {

// Entry point behind the `dla` binary; args excludes the program name.
// Returns 0 on success, 1 when an instance fails in strict mode, 2 on usage errors.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dla
