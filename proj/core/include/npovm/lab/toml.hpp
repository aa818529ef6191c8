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
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace npovm::lab {

/// The subset of TOML used by sweep configs: tables, bare or quoted keys,
/// strings, integers, floats, booleans and (possibly multi-line) arrays of those.
struct TomlValue {
  using Array = std::vector<TomlValue>;
  std::variant<bool, std::int64_t, double, std::string, Array> data;

  bool is_number() const;
  double as_number() const;
  std::int64_t as_integer() const;
  bool as_bool() const;
  const std::string& as_string() const;
  const Array& as_array() const;
};

/// Flat view of a document: keys are "table.key" (or "key" at top level).
using TomlDocument = std::map<std::string, TomlValue>;

/// Throws ConfigError with a line number on malformed input.
TomlDocument parse_toml(std::string_view text);

}  // namespace npovm::lab
