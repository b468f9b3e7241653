#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace qss::cli {

/// Parser for the TOML subset used by run configurations: comments, one level
/// of [tables], and key = value pairs holding booleans, integers, floats,
/// basic strings, or (possibly multi-line) arrays of those.
struct TomlValue;
using TomlArray = std::vector<TomlValue>;

struct TomlValue {
  std::variant<bool, std::int64_t, double, std::string, TomlArray> data;

  bool is_bool() const { return std::holds_alternative<bool>(data); }
  bool is_int() const { return std::holds_alternative<std::int64_t>(data); }
  bool is_float() const { return std::holds_alternative<double>(data); }
  bool is_string() const { return std::holds_alternative<std::string>(data); }
  bool is_array() const { return std::holds_alternative<TomlArray>(data); }
};

using TomlTable = std::map<std::string, TomlValue>;

/// Root keys live under the empty table name.
struct TomlDocument {
  std::map<std::string, TomlTable> tables;
};

class TomlError : public std::runtime_error {
 public:
  TomlError(int line, const std::string& message);
  int line() const noexcept { return line_; }

 private:
  int line_;
};

TomlDocument parse_toml(std::string_view text);

/// Formats a double so that it parses back as a float with the same value.
std::string toml_float(double x);
std::string toml_string(std::string_view s);

}  // namespace qss::cli
