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

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace qmeasure {

/// Every failure the library reports. The name of each enumerator is what
/// appears in diagnostics (see to_string).
enum class ErrorCode {
    Parse,
    Io,
    NotHermitian,
    NotPositive,
    NotNormalized,
    NotOrthonormal,
    NotUnitary,
    InvalidSpectrum,
    InvalidState,
    ZeroVector,
    WeightSum,
    BadBasis,
    SubspaceViolation,
    ConstraintViolatedOnInput,
    IncompatibleConstraints,
    DimMismatch,
    BadRank,
    BadDim,
    BadOutcomeIndex,
    ImpossibleOutcome,
    NoConvergence,
    VerdictDisagreement,
};

/// Coarse grouping used for process exit codes.
enum class ErrorClass {
    Parse,      // malformed input text, unreadable files, non-Hermitian operator files
    Validation, // well-formed input that violates a domain invariant
    Contract,   // caller passed mismatched or out-of-range arguments
};

std::string_view to_string(ErrorCode code) noexcept;
ErrorClass classify(ErrorCode code) noexcept;

class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string &detail,
          std::optional<double> value = std::nullopt);

    [[nodiscard]] ErrorCode code() const noexcept { return code_; }
    [[nodiscard]] ErrorClass error_class() const noexcept {
        return classify(code_);
    }
    /// Offending quantity, when one exists (most negative eigenvalue for
    /// NotPositive, the trace for NotNormalized, a residual otherwise).
    [[nodiscard]] std::optional<double> value() const noexcept {
        return value_;
    }
    /// Message without the error-code prefix.
    [[nodiscard]] const std::string &detail() const noexcept { return detail_; }

  private:
    ErrorCode code_;
    std::string detail_;
    std::optional<double> value_;
};

} // namespace qmeasure
