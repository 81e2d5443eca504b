#ifndef KGCERT_CLI_HPP
#define KGCERT_CLI_HPP

#include <iosfwd>

namespace kgcert {

// Exit codes: 0 success, 1 verification failure, 2 usage or parse error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;
inline constexpr int kExitUsage = 2;

int run_cli(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace kgcert

#endif
