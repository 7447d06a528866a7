#pragma once

#include <string>
#include <vector>

namespace blobcalc {

inline constexpr const char* kEngineVersion = "0.1.0";

/// Exit codes: 0 ok, 2 invalid coefficients, 3 parse error, 4 resource cap
/// exceeded, 5 comparison mismatch, 1 usage errors.
struct CliResult {
    int exit_code;
    std::string out;
    std::string err;
};

/// Runs one CLI invocation (arguments without the program name).
CliResult run_cli(const std::vector<std::string>& args);

}  // namespace blobcalc
