#ifndef WALLSUN_CLI_HPP
#define WALLSUN_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace wallsun::cli {

/// Process exit codes.
enum ExitCode : int { kOk = 0, kCheckFailure = 1, kUsage = 2, kResource = 3 };

/// Full command line including the program name.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Arguments after the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace wallsun::cli

#endif  // WALLSUN_CLI_HPP
