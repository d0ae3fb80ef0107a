#pragma once

#include <charconv>
#include <string>
#include <system_error>

namespace causanet {

// Shortest round-trip decimal form of a double ("1", "0.5", "2.25e-07"...).
// Used everywhere canonical, byte-stable text is required (traces, DSL
// serialization, DOT export, CLI output).
inline std::string format_number(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

inline std::string format_number(int v) { return std::to_string(v); }

}  // namespace causanet
