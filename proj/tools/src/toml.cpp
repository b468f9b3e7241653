#include "qss/cli/toml.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <set>

namespace qss::cli {

TomlError::TomlError(int line, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : s_(text) {}

  TomlDocument run() {
    TomlDocument doc;
    std::string table;
    doc.tables[table];
    std::set<std::string> declared;
    while (true) {
      skip_blank_lines();
      if (eof()) break;
      if (peek() == '[') {
        ++pos_;
        skip_spaces();
        table = key();
        skip_spaces();
        expect(']');
        if (!declared.insert(table).second) error("duplicate table [" + table + "]");
        doc.tables[table];
      } else {
        const std::string k = key();
        skip_spaces();
        expect('=');
        skip_spaces();
        TomlValue v = value();
        auto& t = doc.tables[table];
        if (t.count(k)) error("duplicate key '" + k + "'");
        t.emplace(k, std::move(v));
      }
      end_of_line();
    }
    return doc;
  }

 private:
  bool eof() const { return pos_ >= s_.size(); }
  char peek() const { return eof() ? '\0' : s_[pos_]; }

  [[noreturn]] void error(const std::string& msg) const { throw TomlError(line_, msg); }

  void expect(char c) {
    if (peek() != c) error(std::string("expected '") + c + "'");
    ++pos_;
  }

  void skip_spaces() {
    while (!eof() && (peek() == ' ' || peek() == '\t')) ++pos_;
  }

  void skip_comment() {
    if (peek() == '#') {
      while (!eof() && peek() != '\n') ++pos_;
    }
  }

  void newline() {
    if (peek() == '\r') ++pos_;
    if (peek() == '\n') {
      ++pos_;
      ++line_;
    }
  }

  void skip_blank_lines() {
    while (!eof()) {
      skip_spaces();
      skip_comment();
      if (peek() == '\n' || peek() == '\r') {
        newline();
      } else {
        return;
      }
    }
  }

  // Whitespace, comments and newlines inside arrays.
  void skip_array_space() {
    while (!eof()) {
      skip_spaces();
      skip_comment();
      if (peek() == '\n' || peek() == '\r') {
        newline();
      } else {
        return;
      }
    }
  }

  void end_of_line() {
    skip_spaces();
    skip_comment();
    if (eof()) return;
    if (peek() != '\n' && peek() != '\r') error("unexpected trailing characters");
    newline();
  }

  std::string key() {
    if (peek() == '"') return basic_string();
    std::string k;
    while (!eof() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_' || peek() == '-')) {
      k += s_[pos_++];
    }
    if (k.empty()) error("expected a key");
    return k;
  }

  std::string basic_string() {
    expect('"');
    std::string out;
    while (true) {
      if (eof() || peek() == '\n') error("unterminated string");
      char c = s_[pos_++];
      if (c == '"') break;
      if (c == '\\') {
        if (eof()) error("unterminated escape");
        char e = s_[pos_++];
        switch (e) {
          case '"': out += '"'; break;
          case '\\': out += '\\'; break;
          case 'n': out += '\n'; break;
          case 't': out += '\t'; break;
          case 'r': out += '\r'; break;
          default: error(std::string("unsupported escape \\") + e);
        }
      } else {
        out += c;
      }
    }
    return out;
  }

  TomlValue value() {
    const char c = peek();
    if (c == '"') return {basic_string()};
    if (c == '[') return {array()};
    std::string tok;
    while (!eof() && !std::isspace(static_cast<unsigned char>(peek())) && peek() != ',' && peek() != ']' &&
           peek() != '#') {
      tok += s_[pos_++];
    }
    if (tok.empty()) error("expected a value");
    if (tok == "true") return {true};
    if (tok == "false") return {false};
    return number(tok);
  }

  TomlValue number(std::string tok) {
    std::string clean;
    for (char ch : tok) {
      if (ch != '_') clean += ch;
    }
    const bool negative = !clean.empty() && clean[0] == '-';
    std::string body = (clean[0] == '+' || clean[0] == '-') ? clean.substr(1) : clean;
    if (body == "inf") return {negative ? -std::numeric_limits<double>::infinity() : std::numeric_limits<double>::infinity()};
    if (body == "nan") return {std::numeric_limits<double>::quiet_NaN()};
    const bool is_float = body.find_first_of(".eE") != std::string::npos;
    const char* first = clean.data() + (clean[0] == '+' ? 1 : 0);
    const char* last = clean.data() + clean.size();
    if (is_float) {
      double x = 0.0;
      auto [ptr, ec] = std::from_chars(first, last, x);
      if (ec != std::errc() || ptr != last) error("invalid float '" + tok + "'");
      return {x};
    }
    std::int64_t x = 0;
    auto [ptr, ec] = std::from_chars(first, last, x);
    if (ec != std::errc() || ptr != last) error("invalid value '" + tok + "'");
    return {x};
  }

  TomlArray array() {
    expect('[');
    TomlArray out;
    skip_array_space();
    while (peek() != ']') {
      out.push_back(value());
      skip_array_space();
      if (peek() == ',') {
        ++pos_;
        skip_array_space();
      } else if (peek() != ']') {
        error("expected ',' or ']' in array");
      }
    }
    ++pos_;
    return out;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  int line_ = 1;
};

}  // namespace

TomlDocument parse_toml(std::string_view text) { return Parser(text).run(); }

std::string toml_float(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  std::string s(buf, res.ptr);
  if (s.find_first_of(".e") == std::string::npos) s += ".0";
  return s;
}

std::string toml_string(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default: out += c;
    }
  }
  return out + "\"";
}

}  // namespace qss::cli
