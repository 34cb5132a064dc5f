// Copyright 2026 The qdb Authors
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

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qdb {

/// Every failure raised by the library carries one of these codes. The
/// string form (see error_code_name) is what shows up in JSON payloads.
enum class ErrorCode {
    // frontend
    LexError,
    ParseError,
    UnsupportedVersion,
    IncludeNotFound,
    CyclicInclude,
    SemanticError,
    // state core
    IndexOutOfRange,
    SameQubit,
    DegenerateNorm,
    CapacityExceeded,
    EmptyKeepSet,
    DimensionMismatch,
    // simulator
    KernelCorruption,
    CursorExhausted,
    NonUnitaryProgram,
    // debugger
    UnresolvableLocation,
    NonUnitaryPrefix,
    UnknownInput,
    MixedGlobalState,
    RegisterOverlap,
    BlankNotZero,
    MixedSource,
    TooManyQubits,
    NonUnitaryPreparation,
    BudgetExhausted,
    // harness
    OutOfRange,
    EmptyObservation,
    SuiteParseError,
    // service
    ProtocolViolation,
    MalformedMessage,
};

std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

 private:
    ErrorCode code_;
};

/// Half-open byte range plus the 1-based line/column of its first byte.
struct Span {
    std::size_t line = 0;
    std::size_t column = 0;
    std::size_t begin = 0;
    std::size_t end = 0;

    bool operator==(const Span&) const = default;
};

/// An error that points into a source file.
class SourceError : public Error {
 public:
    SourceError(ErrorCode code, const std::string& message, std::string file, Span span,
                std::vector<std::string> expected = {})
        : Error(code, message),
          file_(std::move(file)),
          span_(span),
          expected_(std::move(expected)) {}

    const std::string& file() const noexcept { return file_; }
    const Span& span() const noexcept { return span_; }
    /// Token kinds or lexemes that would have been accepted; parse errors only.
    const std::vector<std::string>& expected() const noexcept { return expected_; }

 private:
    std::string file_;
    Span span_;
    std::vector<std::string> expected_;
};

/// Renders `file:line:col: error: message` followed by the offending source
/// line and a caret underline.
std::string format_diagnostic(const SourceError& error, std::string_view source);

}  // namespace qdb
