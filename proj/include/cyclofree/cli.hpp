#pragma once

// The cyclofree command line as a library so tests can drive it in-process.

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace cyclofree::cli {

inline constexpr const char* kVersion = "0.1.0";

enum ExitCode : int {
    exit_success = 0,
    exit_internal = 1,
    exit_invalid = 2,
    exit_resource = 3,
    exit_verification = 4,
};

/// Lower-case hex SHA-256 of the bytes.
std::string sha256_hex(std::string_view bytes);

/// args excludes the program name. The payload goes to --out or `out`, the
/// run manifest to --manifest or `err`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cyclofree::cli
