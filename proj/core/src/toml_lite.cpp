#include "toml_lite.hpp"

#include <cctype>
#include <charconv>
#include <system_error>

#include "hrc/error.hpp"

namespace hrc::toml {
namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Table run() {
    Table root;
    Table* current = &root;
    while (true) {
      skip_blank_lines();
      if (eof()) break;
      if (peek() == '[') {
        current = header(root);
      } else {
        key_value(*current);
      }
      end_of_line();
    }
    return root;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorCode::kInvalidConfig, "line " + std::to_string(line_) + ": " + msg);
  }

  bool eof() const { return pos_ >= text_.size(); }
  char peek() const { return eof() ? '\0' : text_[pos_]; }
  char get() {
    const char c = text_[pos_++];
    if (c == '\n') ++line_;
    return c;
  }

  void skip_inline_space() {
    while (!eof() && (peek() == ' ' || peek() == '\t')) get();
  }

  void skip_comment() {
    if (peek() == '#') {
      while (!eof() && peek() != '\n') get();
    }
  }

  void skip_blank_lines() {
    while (!eof()) {
      skip_inline_space();
      skip_comment();
      if (peek() == '\r') get();
      if (peek() == '\n') {
        get();
        continue;
      }
      break;
    }
  }

  // Whitespace, comments and newlines inside arrays.
  void skip_array_space() {
    while (!eof()) {
      skip_inline_space();
      skip_comment();
      if (peek() == '\n' || peek() == '\r') {
        get();
        continue;
      }
      break;
    }
  }

  void end_of_line() {
    skip_inline_space();
    skip_comment();
    if (peek() == '\r') get();
    if (eof()) return;
    if (peek() != '\n') fail("unexpected trailing characters");
    get();
  }

  std::string bare_key() {
    std::string key;
    while (!eof()) {
      const char c = peek();
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-') {
        key += get();
      } else {
        break;
      }
    }
    if (key.empty()) fail("expected a key");
    return key;
  }

  Table* header(Table& root) {
    get();  // '['
    const bool array = peek() == '[';
    if (array) get();
    skip_inline_space();
    const std::string name = bare_key();
    skip_inline_space();
    if (get() != ']' || (array && get() != ']')) fail("malformed table header");

    auto& slot = root[name];
    if (array) {
      if (!std::holds_alternative<Array>(slot.data)) {
        if (std::holds_alternative<Table>(slot.data) && !std::get<Table>(slot.data).empty()) {
          fail("'" + name + "' is already a table");
        }
        slot.data = Array{};
      }
      auto& arr = std::get<Array>(slot.data);
      arr.push_back(Value{Table{}});
      return &std::get<Table>(arr.back().data);
    }
    if (std::holds_alternative<Array>(slot.data)) fail("'" + name + "' is already an array");
    if (!std::holds_alternative<Table>(slot.data)) slot.data = Table{};
    return &std::get<Table>(slot.data);
  }

  void key_value(Table& table) {
    const std::string key = bare_key();
    skip_inline_space();
    if (get() != '=') fail("expected '=' after '" + key + "'");
    skip_inline_space();
    if (table.contains(key)) fail("duplicate key '" + key + "'");
    table[key] = value();
  }

  Value value() {
    const char c = peek();
    if (c == '"' || c == '\'') return Value{string(c)};
    if (c == '[') return Value{array()};
    if (text_.substr(pos_, 4) == "true") {
      pos_ += 4;
      return Value{true};
    }
    if (text_.substr(pos_, 5) == "false") {
      pos_ += 5;
      return Value{false};
    }
    return Value{number()};
  }

  std::string string(char quote) {
    get();
    std::string out;
    while (true) {
      if (eof() || peek() == '\n') fail("unterminated string");
      char c = get();
      if (c == quote) break;
      if (c == '\\' && quote == '"') {
        if (eof()) fail("unterminated escape");
        const char e = get();
        switch (e) {
          case 'n': c = '\n'; break;
          case 't': c = '\t'; break;
          case '\\': c = '\\'; break;
          case '"': c = '"'; break;
          default: fail(std::string("unsupported escape \\") + e);
        }
      }
      out += c;
    }
    return out;
  }

  Array array() {
    get();  // '['
    Array out;
    while (true) {
      skip_array_space();
      if (peek() == ']') {
        get();
        return out;
      }
      out.push_back(value());
      skip_array_space();
      if (peek() == ',') {
        get();
      } else if (peek() != ']') {
        fail("expected ',' or ']' in array");
      }
    }
  }

  double number() {
    std::string digits;
    while (!eof()) {
      const char c = peek();
      if (std::isdigit(static_cast<unsigned char>(c)) || c == '+' || c == '-' || c == '.' ||
          c == 'e' || c == 'E' || c == '_') {
        get();
        if (c != '_') digits += c;
      } else {
        break;
      }
    }
    if (digits.empty()) fail("expected a value");
    std::string_view sv = digits;
    if (sv.front() == '+') sv.remove_prefix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(sv.data(), sv.data() + sv.size(), v);
    if (ec != std::errc() || ptr != sv.data() + sv.size()) fail("malformed number '" + digits + "'");
    return v;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
};

}  // namespace

Table parse(std::string_view text) { return Parser(text).run(); }

}  // namespace hrc::toml
