#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "qtransfer/validate.hpp"

namespace qtransfer::cli {

// Exit statuses.
inline constexpr int kOk = 0;
inline constexpr int kValidationFailed = 1;
inline constexpr int kInputError = 2;
inline constexpr int kIoError = 3;
inline constexpr int kAmbiguity = 4;

/// `%.{precision}g`: shortest form at the configured number of significant digits.
std::string format_real(double value, int precision);

/// Runs one command. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Same, with `validate` checking `forms` instead of the library's own.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const ClosedForms& forms);

}  // namespace qtransfer::cli
