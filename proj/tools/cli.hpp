#pragma once

#include <complex>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace lfd::cli {

enum ExitCode : int { ok = 0, io_error = 1, usage = 2, numeric = 3, check_failure = 4 };

/// "a", "a+bi", "a-bi", "bi", "a+i". Returns nullopt on anything else.
std::optional<std::complex<double>> parse_complex(const std::string& text);

/// Runs one invocation; args excludes the program name. Reports go to the
/// --out file when given, otherwise to out. Diagnostics go to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lfd::cli
