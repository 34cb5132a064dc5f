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

#include "qdb/errors.hpp"

#include <algorithm>
#include <sstream>

namespace qdb {

std::string_view error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::LexError: return "LexError";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::UnsupportedVersion: return "UnsupportedVersion";
        case ErrorCode::IncludeNotFound: return "IncludeNotFound";
        case ErrorCode::CyclicInclude: return "CyclicInclude";
        case ErrorCode::SemanticError: return "SemanticError";
        case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
        case ErrorCode::SameQubit: return "SameQubit";
        case ErrorCode::DegenerateNorm: return "DegenerateNorm";
        case ErrorCode::CapacityExceeded: return "CapacityExceeded";
        case ErrorCode::EmptyKeepSet: return "EmptyKeepSet";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::KernelCorruption: return "KernelCorruption";
        case ErrorCode::CursorExhausted: return "CursorExhausted";
        case ErrorCode::NonUnitaryProgram: return "NonUnitaryProgram";
        case ErrorCode::UnresolvableLocation: return "UnresolvableLocation";
        case ErrorCode::NonUnitaryPrefix: return "NonUnitaryPrefix";
        case ErrorCode::UnknownInput: return "UnknownInput";
        case ErrorCode::MixedGlobalState: return "MixedGlobalState";
        case ErrorCode::RegisterOverlap: return "RegisterOverlap";
        case ErrorCode::BlankNotZero: return "BlankNotZero";
        case ErrorCode::MixedSource: return "MixedSource";
        case ErrorCode::TooManyQubits: return "TooManyQubits";
        case ErrorCode::NonUnitaryPreparation: return "NonUnitaryPreparation";
        case ErrorCode::BudgetExhausted: return "BudgetExhausted";
        case ErrorCode::OutOfRange: return "OutOfRange";
        case ErrorCode::EmptyObservation: return "EmptyObservation";
        case ErrorCode::SuiteParseError: return "SuiteParseError";
        case ErrorCode::ProtocolViolation: return "ProtocolViolation";
        case ErrorCode::MalformedMessage: return "MalformedMessage";
    }
    return "Unknown";
}

std::string format_diagnostic(const SourceError& error, std::string_view source) {
    std::ostringstream out;
    const Span& span = error.span();
    out << (error.file().empty() ? "<input>" : error.file()) << ':' << span.line << ':'
        << span.column << ": error: " << error.what() << '\n';
    if (span.begin > source.size()) return out.str();

    std::size_t line_start = source.rfind('\n', span.begin == 0 ? 0 : span.begin - 1);
    line_start = (line_start == std::string_view::npos || span.begin == 0) ? 0 : line_start + 1;
    if (span.begin < source.size() && source[span.begin] == '\n' && span.begin > 0) {
        line_start = source.rfind('\n', span.begin - 1);
        line_start = line_start == std::string_view::npos ? 0 : line_start + 1;
    }
    std::size_t line_end = source.find('\n', line_start);
    if (line_end == std::string_view::npos) line_end = source.size();
    std::string_view text = source.substr(line_start, line_end - line_start);

    out << "  " << text << '\n' << "  ";
    std::size_t caret_at = span.begin >= line_start ? span.begin - line_start : 0;
    for (std::size_t i = 0; i < caret_at && i < text.size(); ++i) out << (text[i] == '\t' ? '\t' : ' ');
    std::size_t width = std::max<std::size_t>(1, std::min(span.end, line_end) > span.begin
                                                     ? std::min(span.end, line_end) - span.begin
                                                     : 1);
    out << '^' << std::string(width - 1, '~') << '\n';
    return out.str();
}

}  // namespace qdb
