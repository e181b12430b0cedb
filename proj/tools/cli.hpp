#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace tailbound::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitInfeasible = 2;
inline constexpr int kExitUsage = 64;

/// Runs one command line (arguments without the program name).
/// Tables go to `out` (or the --out file), diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Formats a double with 17 significant digits; "nan", "inf", "-inf" for non-finite values.
std::string format_double(double value);

}  // namespace tailbound::cli
