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

#include <cstdint>
#include <exception>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "qdb/qasm/ir.hpp"
#include "qdb/sim/engine.hpp"
#include "qdb/state/density.hpp"
#include "qdb/state/state.hpp"

namespace qdb::cli {

enum ExitCode : int { kExitPass = 0, kExitFail = 1, kExitUsage = 2, kExitRuntime = 3 };

enum class Format { Text, Json };

/// Bad flag values or combinations that CLI11 cannot catch on its own.
class UsageError : public std::runtime_error {
 public:
    using std::runtime_error::runtime_error;
};

/// Global flags shared by every subcommand.
struct Context {
    Format format = Format::Text;
    std::optional<std::uint64_t> seed;
    std::vector<std::filesystem::path> include_path;
    bool trace = false;
    std::ostream* out = nullptr;
    std::ostream* err = nullptr;

    bool json() const noexcept { return format == Format::Json; }
    std::uint64_t seed_or(std::uint64_t fallback) const noexcept { return seed.value_or(fallback); }
    /// Prints one JSON document per line on stdout.
    void emit(const nlohmann::json& document) const;
};

/// Splits QDB_INCLUDE_PATH on ':'.
std::vector<std::filesystem::path> include_path_from_env();

std::shared_ptr<const qasm::CircuitIR> load_program(const Context& ctx, const std::filesystem::path& file);

/// Engine trace hook writing NDJSON to stderr, or empty when tracing is off.
std::function<void(const sim::TraceEvent&)> trace_sink(const Context& ctx);

/// Accepts "3", "q[3]", a register name ("q") and comma-separated lists of
/// these. Throws UsageError.
std::vector<std::size_t> parse_qubits(std::string_view text, const qasm::CircuitIR& ir);
std::uint64_t parse_count(std::string_view text, std::string_view what);

std::string format_real(double value, int precision = 4);
std::string format_complex(Complex value, int precision = 4);
/// Nonzero amplitudes, one per line, q0 leftmost.
std::string format_state(const QuantumState& state, std::string_view indent = "  ");
std::string format_density(const DensityMatrix& rho, std::string_view indent = "  ");
std::string format_counts(const std::map<std::string, std::uint64_t>& counts, std::string_view indent = "  ");

/// Error object used in JSON output.
nlohmann::json error_to_json(const std::exception& error);
/// Reports `error` (caret diagnostics for source errors) and maps it to an
/// exit code.
int report_error(const Context& ctx, const std::exception& error);

}  // namespace qdb::cli
