/**************************************************************************
 * error.hpp
 *
 * Copyright 2026 The lagc Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 **************************************************************************/

#pragma once

#include <stdexcept>
#include <string>

namespace lagc {

enum class Errc {
    InvalidArgument,
    NotPrime,
    NotIrreducible,
    TooLarge,
    DivisionByZero,
    NormPreimageOfZero,
    InvalidExponent,
    ShapeMismatch,
    IndexOutOfRange,
    PrecisionExhausted,
    NotIntegral,
    MixedRings,
    MixedModuli,
    NonCentralModulus,
    NonInvertibleU,
    ModulusNotOne,
    PoleAtPlace,
    NoAdmissibleFunction,
    TooFewPlaces,
    HypothesisFailed,
    LengthMismatch,
    EnumerationTooLarge,
    InvalidSubspaceDim,
    BoundViolation,
    DescriptorMismatch,
    InvalidQ,
    QNotSquare,
    DeltaTooSmall,
};

inline const char* to_string(Errc c) noexcept {
    switch (c) {
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::NotPrime: return "NotPrime";
    case Errc::NotIrreducible: return "NotIrreducible";
    case Errc::TooLarge: return "TooLarge";
    case Errc::DivisionByZero: return "DivisionByZero";
    case Errc::NormPreimageOfZero: return "NormPreimageOfZero";
    case Errc::InvalidExponent: return "InvalidExponent";
    case Errc::ShapeMismatch: return "ShapeMismatch";
    case Errc::IndexOutOfRange: return "IndexOutOfRange";
    case Errc::PrecisionExhausted: return "PrecisionExhausted";
    case Errc::NotIntegral: return "NotIntegral";
    case Errc::MixedRings: return "MixedRings";
    case Errc::MixedModuli: return "MixedModuli";
    case Errc::NonCentralModulus: return "NonCentralModulus";
    case Errc::NonInvertibleU: return "NonInvertibleU";
    case Errc::ModulusNotOne: return "ModulusNotOne";
    case Errc::PoleAtPlace: return "PoleAtPlace";
    case Errc::NoAdmissibleFunction: return "NoAdmissibleFunction";
    case Errc::TooFewPlaces: return "TooFewPlaces";
    case Errc::HypothesisFailed: return "HypothesisFailed";
    case Errc::LengthMismatch: return "LengthMismatch";
    case Errc::EnumerationTooLarge: return "EnumerationTooLarge";
    case Errc::InvalidSubspaceDim: return "InvalidSubspaceDim";
    case Errc::BoundViolation: return "BoundViolation";
    case Errc::DescriptorMismatch: return "DescriptorMismatch";
    case Errc::InvalidQ: return "InvalidQ";
    case Errc::QNotSquare: return "QNotSquare";
    case Errc::DeltaTooSmall: return "DeltaTooSmall";
    }
    return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& msg)
        : std::runtime_error(std::string(to_string(code)) + ": " + msg), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& msg) { throw Error(code, msg); }

} // namespace lagc
