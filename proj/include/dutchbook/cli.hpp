#ifndef DUTCHBOOK_CLI_HPP
#define DUTCHBOOK_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace dutchbook {

/// Run the command-line interface on `args` (without the program name),
/// writing reports to `out` and diagnostics to `err`.
///
/// Exit codes are a stable contract:
///   0  consistent book / nonempty interval / successful computation or
///      verification
///   1  inconsistent book / empty interval / failed verification
///   2  usage or input error
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

} // namespace dutchbook

#endif // DUTCHBOOK_CLI_HPP
