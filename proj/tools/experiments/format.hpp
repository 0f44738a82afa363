#pragma once

#include <charconv>
#include <string>
#include <system_error>

namespace quill::experiments {

/// Shortest-round-trip is not enough for byte-stable tables across
/// platforms; always print 17 significant digits, C locale.
inline std::string format_double(double v) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return res.ec == std::errc{} ? std::string(buf, res.ptr) : std::string("nan");
}

} // namespace quill::experiments
