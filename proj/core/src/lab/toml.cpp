// Copyright 2026 The npovm-lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include "npovm/lab/toml.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>

#include "npovm/errors.hpp"

namespace npovm::lab {

bool TomlValue::is_number() const {
  return std::holds_alternative<std::int64_t>(data) || std::holds_alternative<double>(data);
}

double TomlValue::as_number() const {
  if (auto* i = std::get_if<std::int64_t>(&data)) return static_cast<double>(*i);
  if (auto* d = std::get_if<double>(&data)) return *d;
  throw ConfigError("expected a number");
}

std::int64_t TomlValue::as_integer() const {
  if (auto* i = std::get_if<std::int64_t>(&data)) return *i;
  throw ConfigError("expected an integer");
}

bool TomlValue::as_bool() const {
  if (auto* b = std::get_if<bool>(&data)) return *b;
  throw ConfigError("expected a boolean");
}

const std::string& TomlValue::as_string() const {
  if (auto* s = std::get_if<std::string>(&data)) return *s;
  throw ConfigError("expected a string");
}

const TomlValue::Array& TomlValue::as_array() const {
  if (auto* a = std::get_if<Array>(&data)) return *a;
  throw ConfigError("expected an array");
}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  TomlDocument run() {
    TomlDocument doc;
    std::string table;
    while (true) {
      skip_blank_lines();
      if (eof()) break;
      if (peek() == '[') {
        ++pos_;
        skip_inline_space();
        table = parse_key();
        skip_inline_space();
        expect(']');
        end_of_line();
        continue;
      }
      std::string key = parse_key();
      skip_inline_space();
      expect('=');
      skip_inline_space();
      TomlValue value = parse_value();
      end_of_line();
      const std::string full = table.empty() ? key : table + "." + key;
      if (!doc.emplace(full, std::move(value)).second) fail("duplicate key '" + full + "'");
    }
    return doc;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ConfigError("config line " + std::to_string(line_) + ": " + msg);
  }

  bool eof() const { return pos_ >= text_.size(); }
  char peek() const { return eof() ? '\0' : text_[pos_]; }

  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  void skip_inline_space() {
    while (!eof() && (peek() == ' ' || peek() == '\t')) ++pos_;
  }

  void skip_comment() {
    if (peek() == '#') {
      while (!eof() && peek() != '\n') ++pos_;
    }
  }

  // Whitespace, newlines and comments (used between lines and inside arrays).
  void skip_blank_lines() {
    while (!eof()) {
      skip_inline_space();
      skip_comment();
      if (peek() == '\r') ++pos_;
      if (peek() == '\n') {
        ++pos_;
        ++line_;
        continue;
      }
      break;
    }
  }

  void end_of_line() {
    skip_inline_space();
    skip_comment();
    if (peek() == '\r') ++pos_;
    if (eof()) return;
    if (peek() != '\n') fail("unexpected trailing characters");
    ++pos_;
    ++line_;
  }

  std::string parse_key() {
    std::string key;
    while (true) {
      if (peek() == '"') {
        key += parse_string();
      } else if (peek() == '\'') {
        key += parse_literal_string();
      } else {
        const std::size_t start = pos_;
        while (!eof() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_' || peek() == '-')) ++pos_;
        if (pos_ == start) fail("expected a key");
        key.append(text_.substr(start, pos_ - start));
      }
      skip_inline_space();
      if (peek() != '.') break;
      ++pos_;
      skip_inline_space();
      key += '.';
    }
    return key;
  }

  std::string parse_string() {
    expect('"');
    std::string out;
    while (true) {
      if (eof() || peek() == '\n') fail("unterminated string");
      const char c = text_[pos_++];
      if (c == '"') break;
      if (c != '\\') {
        out += c;
        continue;
      }
      if (eof()) fail("unterminated escape");
      const char e = text_[pos_++];
      switch (e) {
        case 'n': out += '\n'; break;
        case 't': out += '\t'; break;
        case '"': out += '"'; break;
        case '\\': out += '\\'; break;
        default: fail(std::string("unsupported escape \\") + e);
      }
    }
    return out;
  }

  std::string parse_literal_string() {
    expect('\'');
    const std::size_t start = pos_;
    while (true) {
      if (eof() || peek() == '\n') fail("unterminated string");
      if (text_[pos_++] == '\'') break;
    }
    return std::string(text_.substr(start, pos_ - start - 1));
  }

  TomlValue parse_value() {
    const char c = peek();
    if (c == '"') return {parse_string()};
    if (c == '\'') return {parse_literal_string()};
    if (c == '[') return parse_array();
    if (text_.substr(pos_, 4) == "true") {
      pos_ += 4;
      return {true};
    }
    if (text_.substr(pos_, 5) == "false") {
      pos_ += 5;
      return {false};
    }
    return parse_number();
  }

  TomlValue parse_array() {
    expect('[');
    TomlValue::Array items;
    while (true) {
      skip_blank_lines();
      if (peek() == ']') {
        ++pos_;
        break;
      }
      items.push_back(parse_value());
      skip_blank_lines();
      if (peek() == ',') {
        ++pos_;
        continue;
      }
      skip_blank_lines();
      expect(']');
      break;
    }
    return {std::move(items)};
  }

  TomlValue parse_number() {
    const std::size_t start = pos_;
    while (!eof() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '+' || peek() == '-' ||
                      peek() == '.' || peek() == '_')) {
      ++pos_;
    }
    std::string token;
    for (char ch : text_.substr(start, pos_ - start)) {
      if (ch != '_') token += ch;
    }
    if (token.empty()) fail("expected a value");
    std::string unsigned_tok = token;
    bool negative = false;
    if (unsigned_tok[0] == '+' || unsigned_tok[0] == '-') {
      negative = unsigned_tok[0] == '-';
      unsigned_tok.erase(0, 1);
    }
    if (unsigned_tok == "inf") {
      return {negative ? -std::numeric_limits<double>::infinity() : std::numeric_limits<double>::infinity()};
    }
    if (unsigned_tok == "nan") return {std::numeric_limits<double>::quiet_NaN()};
    const bool is_float = token.find_first_of(".eE") != std::string::npos;
    const char* first = token.data() + (token[0] == '+' ? 1 : 0);
    const char* last = token.data() + token.size();
    if (is_float) {
      double v = 0.0;
      auto [p, ec] = std::from_chars(first, last, v);
      if (ec != std::errc() || p != last) fail("malformed number '" + token + "'");
      return {v};
    }
    std::int64_t v = 0;
    auto [p, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || p != last) fail("malformed value '" + token + "'");
    return {v};
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
};

}  // namespace

TomlDocument parse_toml(std::string_view text) { return Parser(text).run(); }

}  // namespace npovm::lab
