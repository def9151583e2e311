// Copyright 2026 The qmeasure Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qmeasure/matrix.hpp"

// Matrix text format:
//
//   # comment lines start with '#'
//   dim <n>
//   <n whitespace-separated entries>     (n such rows)
//
// Entries are written a+bi or a-bi; a bare real a is accepted on input.
// Printing uses the shortest decimal form that reads back to the same
// double, so parse/print round trips are value-exact.

namespace qmeasure {

/// Line cursor over a text buffer that skips blank lines and '#' comments.
class TextLines {
  public:
    explicit TextLines(std::string_view text);

    /// Next content line with surrounding whitespace trimmed, or nullopt
    /// at end of input.
    std::optional<std::string_view> next();
    /// Like next() but raises a parse error at end of input.
    std::string_view expect(std::string_view what);
    /// Peeks without consuming.
    std::optional<std::string_view> peek();

    [[nodiscard]] std::size_t line_number() const noexcept { return line_; }
    [[noreturn]] void fail(const std::string &message) const;

  private:
    std::string_view text_;
    std::size_t pos_ = 0;
    std::size_t line_ = 0;
};

/// Splits on ASCII whitespace.
std::vector<std::string_view> split_tokens(std::string_view line);

std::optional<Complex> parse_complex(std::string_view token);
std::optional<double> parse_real(std::string_view token);
std::string format_real(double value);
std::string format_complex(Complex value);

/// Reads a `dim n` header and n rows from the cursor.
ComplexMatrix read_matrix(TextLines &lines);
/// Parses a whole buffer holding exactly one matrix.
ComplexMatrix parse_matrix(std::string_view text);
std::string format_matrix(const ComplexMatrix &m);

std::string read_text_file(const std::filesystem::path &path);
ComplexMatrix load_matrix_file(const std::filesystem::path &path);
void save_matrix_file(const std::filesystem::path &path, const ComplexMatrix &m);

/// Columns of a matrix as vectors.
std::vector<Vector> columns_of(const ComplexMatrix &m);

} // namespace qmeasure
