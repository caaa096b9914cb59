#pragma once

#include <charconv>
#include <optional>
#include <string>

namespace offload::csv {

/// Shortest decimal text that parses back to the same double.
inline std::string number(double v)
{
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

/// Empty field for an absent value.
inline std::string number(const std::optional<double>& v)
{
  return v ? number(*v) : std::string();
}

}  // namespace offload::csv
