#include "fcucb_cli/output.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace fcucb::cli {

void append_double(std::string& out, double x) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  out.append(buf, res.ptr);
}

std::string format_double(double x) {
  std::string s;
  append_double(s, x);
  return s;
}

std::string format_significant(double x, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

void write_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error(path + ": cannot open for writing");
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw std::runtime_error(path + ": write failed");
}

}  // namespace fcucb::cli
