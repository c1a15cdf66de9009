#pragma once

// Reader for the subset of TOML used by the configuration files: bare keys,
// [table] and [[array-of-tables]] headers, strings, numbers, booleans and
// (nested, multi-line) arrays. Dotted keys, inline tables and dates are not
// supported.

#include <map>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace hrc::toml {

struct Value;
using Array = std::vector<Value>;
using Table = std::map<std::string, Value>;

struct Value {
  std::variant<double, bool, std::string, Array, Table> data;

  bool is_number() const { return std::holds_alternative<double>(data); }
  bool is_bool() const { return std::holds_alternative<bool>(data); }
  bool is_string() const { return std::holds_alternative<std::string>(data); }
  bool is_array() const { return std::holds_alternative<Array>(data); }
  bool is_table() const { return std::holds_alternative<Table>(data); }
};

// Throws Error(kInvalidConfig) with a line number on malformed input.
Table parse(std::string_view text);

}  // namespace hrc::toml
