#ifndef EAG_TOOLS_CLI_HPP
#define EAG_TOOLS_CLI_HPP

#include <ostream>

namespace eag {

/// The `eag` command. Exit codes: 0 success, 1 verdict FALSE or FAIL, 2 usage or parse error.
int cliMain(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace eag

#endif  // EAG_TOOLS_CLI_HPP
