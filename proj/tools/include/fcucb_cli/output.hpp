#pragma once

#include <string>
#include <string_view>

namespace fcucb::cli {

/// Shortest decimal form that reads back to the same double.
std::string format_double(double x);

/// Appends format_double(x) to `out` without a temporary string.
void append_double(std::string& out, double x);

/// printf-style %.12g.
std::string format_significant(double x, int digits = 12);

/// Writes `contents` to `path`, replacing any existing file. Throws
/// std::runtime_error on failure.
void write_file(const std::string& path, std::string_view contents);

}  // namespace fcucb::cli
