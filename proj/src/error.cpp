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

#include "qmeasure/error.hpp"

namespace qmeasure {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::Parse: return "ParseError";
    case ErrorCode::Io: return "IoError";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NotPositive: return "NotPositive";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::NotOrthonormal: return "NotOrthonormal";
    case ErrorCode::NotUnitary: return "NotUnitary";
    case ErrorCode::InvalidSpectrum: return "InvalidSpectrum";
    case ErrorCode::InvalidState: return "InvalidState";
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::WeightSum: return "WeightSum";
    case ErrorCode::BadBasis: return "BadBasis";
    case ErrorCode::SubspaceViolation: return "SubspaceViolation";
    case ErrorCode::ConstraintViolatedOnInput: return "ConstraintViolatedOnInput";
    case ErrorCode::IncompatibleConstraints: return "IncompatibleConstraints";
    case ErrorCode::DimMismatch: return "DimMismatch";
    case ErrorCode::BadRank: return "BadRank";
    case ErrorCode::BadDim: return "BadDim";
    case ErrorCode::BadOutcomeIndex: return "BadOutcomeIndex";
    case ErrorCode::ImpossibleOutcome: return "ImpossibleOutcome";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::VerdictDisagreement: return "VerdictDisagreement";
    }
    return "UnknownError";
}

ErrorClass classify(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::Parse:
    case ErrorCode::Io:
    case ErrorCode::NotHermitian:
        return ErrorClass::Parse;
    case ErrorCode::NotPositive:
    case ErrorCode::NotNormalized:
    case ErrorCode::NotOrthonormal:
    case ErrorCode::NotUnitary:
    case ErrorCode::InvalidSpectrum:
    case ErrorCode::InvalidState:
    case ErrorCode::ZeroVector:
    case ErrorCode::WeightSum:
    case ErrorCode::BadBasis:
    case ErrorCode::SubspaceViolation:
    case ErrorCode::ConstraintViolatedOnInput:
    case ErrorCode::IncompatibleConstraints:
        return ErrorClass::Validation;
    default:
        return ErrorClass::Contract;
    }
}

namespace {
std::string compose(ErrorCode code, const std::string &detail) {
    std::string msg(to_string(code));
    if (!detail.empty()) {
        msg += ": ";
        msg += detail;
    }
    return msg;
}
} // namespace

Error::Error(ErrorCode code, const std::string &detail,
             std::optional<double> value)
    : std::runtime_error(compose(code, detail)), code_(code), detail_(detail),
      value_(value) {}

} // namespace qmeasure
