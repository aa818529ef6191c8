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

#include <iosfwd>
#include <string>
#include <vector>

#include "npovm/tensor.hpp"

namespace npovm::cli {

enum ExitCode : int { kOk = 0, kFailure = 1, kUsage = 2, kIo = 3, kInvariant = 4 };

/// Runs the npovm-lab command line. argv[0] is the program name.
int cli_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int cli_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Parses a complex matrix from text: one row per line, entries separated by
/// whitespace, each entry "re,im" (or a bare real). '#' starts a comment.
ComplexMatrix parse_matrix_text(const std::string& text);

/// Named matrix (identity2, identity4, cnot, hadamard, xx_um) or a file path.
ComplexMatrix load_matrix(const std::string& name_or_path);

}  // namespace npovm::cli
