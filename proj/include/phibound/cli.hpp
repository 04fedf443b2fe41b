#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace phibound::cli {

/// Run the command-line front end. args excludes the program name.
/// Exit status: 0 success (verify: passed), 1 verification failure,
/// 2 argument/usage error, 3 domain error.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace phibound::cli
