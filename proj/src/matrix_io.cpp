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

#include "qmeasure/matrix_io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "qmeasure/error.hpp"

namespace qmeasure {

namespace {

bool is_space(char c) {
    return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\v' ||
           c == '\f';
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && is_space(s.front())) {
        s.remove_prefix(1);
    }
    while (!s.empty() && is_space(s.back())) {
        s.remove_suffix(1);
    }
    return s;
}

// from_chars rejects a leading '+', which the entry grammar allows.
std::optional<double> parse_signed(std::string_view token) {
    bool negative = false;
    if (!token.empty() && (token.front() == '+' || token.front() == '-')) {
        negative = token.front() == '-';
        token.remove_prefix(1);
    }
    if (token.empty() || token.front() == '+' || token.front() == '-') {
        return std::nullopt;
    }
    double value = 0.0;
    const auto *first = token.data();
    const auto *last = token.data() + token.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last || !std::isfinite(value)) {
        return std::nullopt;
    }
    return negative ? -value : value;
}

} // namespace

TextLines::TextLines(std::string_view text) : text_(text) {}

std::optional<std::string_view> TextLines::next() {
    while (pos_ < text_.size()) {
        std::size_t end = text_.find('\n', pos_);
        if (end == std::string_view::npos) {
            end = text_.size();
        }
        std::string_view raw = text_.substr(pos_, end - pos_);
        pos_ = end + 1;
        ++line_;
        const auto line = trim(raw);
        if (line.empty() || line.front() == '#') {
            continue;
        }
        return line;
    }
    return std::nullopt;
}

std::optional<std::string_view> TextLines::peek() {
    const auto saved_pos = pos_;
    const auto saved_line = line_;
    auto line = next();
    pos_ = saved_pos;
    line_ = saved_line;
    return line;
}

std::string_view TextLines::expect(std::string_view what) {
    auto line = next();
    if (!line) {
        fail("unexpected end of input, expected " + std::string(what));
    }
    return *line;
}

void TextLines::fail(const std::string &message) const {
    throw Error(ErrorCode::Parse, "line " + std::to_string(line_) + ": " + message);
}

std::vector<std::string_view> split_tokens(std::string_view line) {
    std::vector<std::string_view> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && is_space(line[i])) {
            ++i;
        }
        const std::size_t start = i;
        while (i < line.size() && !is_space(line[i])) {
            ++i;
        }
        if (i > start) {
            tokens.push_back(line.substr(start, i - start));
        }
    }
    return tokens;
}

std::optional<double> parse_real(std::string_view token) {
    return parse_signed(token);
}

std::optional<Complex> parse_complex(std::string_view token) {
    if (token.empty()) {
        return std::nullopt;
    }
    if (token.back() != 'i') {
        auto re = parse_signed(token);
        if (!re) {
            return std::nullopt;
        }
        return Complex(*re, 0.0);
    }
    token.remove_suffix(1);
    // The imaginary part starts at the last sign that is not the leading
    // sign and not an exponent sign.
    std::size_t split = std::string_view::npos;
    for (std::size_t i = token.size(); i-- > 1;) {
        if ((token[i] == '+' || token[i] == '-') && token[i - 1] != 'e' &&
            token[i - 1] != 'E') {
            split = i;
            break;
        }
    }
    if (split == std::string_view::npos) {
        // pure imaginary "bi"
        auto im = parse_signed(token);
        if (!im) {
            return std::nullopt;
        }
        return Complex(0.0, *im);
    }
    auto re = parse_signed(token.substr(0, split));
    auto im = parse_signed(token.substr(split));
    if (!re || !im) {
        return std::nullopt;
    }
    return Complex(*re, *im);
}

std::string format_real(double value) {
    std::array<char, 64> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    return std::string(buf.data(), ptr);
}

std::string format_complex(Complex value) {
    // Signed zeros print as plain 0 on both parts.
    std::string out = format_real(value.real() == 0.0 ? 0.0 : value.real());
    const double im = value.imag();
    out += im < 0.0 ? '-' : '+';
    out += format_real(std::abs(im));
    out += 'i';
    return out;
}

ComplexMatrix read_matrix(TextLines &lines) {
    const auto header = split_tokens(lines.expect("'dim <n>' header"));
    if (header.size() != 2 || header[0] != "dim") {
        lines.fail("expected 'dim <n>'");
    }
    std::size_t n = 0;
    auto [ptr, ec] = std::from_chars(header[1].data(),
                                     header[1].data() + header[1].size(), n);
    if (ec != std::errc{} || ptr != header[1].data() + header[1].size() ||
        n == 0) {
        lines.fail("dimension must be a positive integer, got '" +
                   std::string(header[1]) + "'");
    }
    ComplexMatrix m(n);
    for (std::size_t r = 0; r < n; ++r) {
        const auto row = split_tokens(lines.expect("matrix row"));
        if (row.size() != n) {
            lines.fail("row " + std::to_string(r) + " has " +
                       std::to_string(row.size()) + " entries, expected " +
                       std::to_string(n));
        }
        for (std::size_t c = 0; c < n; ++c) {
            auto z = parse_complex(row[c]);
            if (!z) {
                lines.fail("bad complex entry '" + std::string(row[c]) + "'");
            }
            m(r, c) = *z;
        }
    }
    return m;
}

ComplexMatrix parse_matrix(std::string_view text) {
    TextLines lines(text);
    auto m = read_matrix(lines);
    if (lines.next()) {
        lines.fail("trailing content after matrix");
    }
    return m;
}

std::string format_matrix(const ComplexMatrix &m) {
    std::string out = "dim " + std::to_string(m.dim()) + "\n";
    for (std::size_t r = 0; r < m.dim(); ++r) {
        for (std::size_t c = 0; c < m.dim(); ++c) {
            if (c > 0) {
                out += ' ';
            }
            out += format_complex(m(r, c));
        }
        out += '\n';
    }
    return out;
}

std::string read_text_file(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorCode::Io, "cannot open '" + path.string() + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

ComplexMatrix load_matrix_file(const std::filesystem::path &path) {
    return parse_matrix(read_text_file(path));
}

void save_matrix_file(const std::filesystem::path &path,
                      const ComplexMatrix &m) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error(ErrorCode::Io, "cannot write '" + path.string() + "'");
    }
    out << format_matrix(m);
}

std::vector<Vector> columns_of(const ComplexMatrix &m) {
    std::vector<Vector> cols;
    cols.reserve(m.dim());
    for (std::size_t c = 0; c < m.dim(); ++c) {
        cols.push_back(m.column(c));
    }
    return cols;
}

} // namespace qmeasure
