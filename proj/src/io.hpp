#pragma once

#include <string>

#include "common.hpp"

namespace cdsp::io {

// Two-column numeric file, whitespace- or comma-delimited, one observation
// per line. '#' starts a comment. Throws InputError with the offending line
// number; an empty file is an InputError.
Sample read_two_column_file(const std::string& path);

// %.17g with '.' decimal separator regardless of locale.
std::string format_double(double v);

}  // namespace cdsp::io
