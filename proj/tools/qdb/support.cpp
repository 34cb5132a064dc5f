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

#include "support.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "qdb/errors.hpp"

namespace qdb::cli {

void Context::emit(const nlohmann::json& document) const { *out << document.dump() << '\n'; }

std::vector<std::filesystem::path> include_path_from_env() {
    std::vector<std::filesystem::path> out;
    const char* env = std::getenv("QDB_INCLUDE_PATH");
    if (!env) return out;
    std::string_view rest(env);
    while (!rest.empty()) {
        const auto colon = rest.find(':');
        const auto part = rest.substr(0, colon);
        if (!part.empty()) out.emplace_back(std::string(part));
        if (colon == std::string_view::npos) break;
        rest.remove_prefix(colon + 1);
    }
    return out;
}

std::shared_ptr<const qasm::CircuitIR> load_program(const Context& ctx, const std::filesystem::path& file) {
    qasm::LoadOptions options;
    options.include_path = ctx.include_path;
    return std::make_shared<const qasm::CircuitIR>(qasm::load_circuit_file(file, options));
}

std::function<void(const sim::TraceEvent&)> trace_sink(const Context& ctx) {
    if (!ctx.trace) return {};
    std::ostream* err = ctx.err;
    return [err](const sim::TraceEvent& ev) { *err << sim::trace_event_to_json(ev).dump() << '\n'; };
}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::optional<std::size_t> parse_index(std::string_view s) {
    std::size_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
    return v;
}

void append_qubit_ref(std::string_view ref, const qasm::CircuitIR& ir, std::vector<std::size_t>& out) {
    if (auto idx = parse_index(ref)) {
        if (*idx >= ir.n_qubits) {
            throw UsageError("qubit " + std::string(ref) + " out of range (program has " + std::to_string(ir.n_qubits) +
                             ")");
        }
        out.push_back(*idx);
        return;
    }
    const auto open = ref.find('[');
    if (open == std::string_view::npos) {
        const auto* reg = ir.find_qreg(ref);
        if (!reg) throw UsageError("unknown quantum register '" + std::string(ref) + "'");
        for (std::size_t i = 0; i < reg->size; ++i) out.push_back(reg->offset + i);
        return;
    }
    const auto* reg = ir.find_qreg(ref.substr(0, open));
    const auto idx = ref.back() == ']' ? parse_index(ref.substr(open + 1, ref.size() - open - 2)) : std::nullopt;
    if (!reg || !idx || *idx >= reg->size) throw UsageError("cannot resolve qubit '" + std::string(ref) + "'");
    out.push_back(reg->offset + *idx);
}

}  // namespace

std::vector<std::size_t> parse_qubits(std::string_view text, const qasm::CircuitIR& ir) {
    std::vector<std::size_t> out;
    while (true) {
        const auto comma = text.find(',');
        const auto part = trim(text.substr(0, comma));
        if (part.empty()) throw UsageError("empty qubit reference");
        append_qubit_ref(part, ir, out);
        if (comma == std::string_view::npos) break;
        text.remove_prefix(comma + 1);
    }
    return out;
}

std::uint64_t parse_count(std::string_view text, std::string_view what) {
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
        throw UsageError(std::string(what) + " must be a non-negative integer, got '" + std::string(text) + "'");
    }
    return v;
}

std::string format_real(double value, int precision) {
    if (std::abs(value) < 0.5 * std::pow(10.0, -precision)) value = 0.0;
    std::ostringstream s;
    s << std::fixed << std::setprecision(precision) << value;
    return s.str();
}

std::string format_complex(Complex value, int precision) {
    std::string re = format_real(value.real(), precision);
    std::string im = format_real(value.imag(), precision);
    if (im.front() != '-') im.insert(0, "+");
    if (re.front() != '-') re.insert(0, " ");
    return re + im + "i";
}

std::string format_state(const QuantumState& state, std::string_view indent) {
    std::ostringstream s;
    const auto& amps = state.amplitudes();
    for (std::size_t i = 0; i < amps.size(); ++i) {
        if (std::norm(amps[i]) < 1e-12) continue;
        s << indent << '|' << basis_label(i, state.n_qubits()) << ">  " << format_complex(amps[i])
          << "   p=" << format_real(std::norm(amps[i])) << '\n';
    }
    return s.str();
}

std::string format_density(const DensityMatrix& rho, std::string_view indent) {
    std::ostringstream s;
    for (std::size_t r = 0; r < rho.dimension(); ++r) {
        s << indent;
        for (std::size_t c = 0; c < rho.dimension(); ++c) s << (c ? "  " : "") << format_complex(rho(r, c));
        s << '\n';
    }
    return s.str();
}

std::string format_counts(const std::map<std::string, std::uint64_t>& counts, std::string_view indent) {
    std::size_t width = 0;
    for (const auto& [k, v] : counts) width = std::max(width, k.size());
    std::ostringstream s;
    for (const auto& [k, v] : counts) {
        s << indent << std::left << std::setw(static_cast<int>(std::max<std::size_t>(width, 1))) << (k.empty() ? "-" : k)
          << "  " << v << '\n';
    }
    return s.str();
}

namespace {

bool is_frontend_error(ErrorCode code) {
    switch (code) {
        case ErrorCode::LexError:
        case ErrorCode::ParseError:
        case ErrorCode::UnsupportedVersion:
        case ErrorCode::IncludeNotFound:
        case ErrorCode::CyclicInclude:
        case ErrorCode::SemanticError:
        case ErrorCode::SuiteParseError:
            return true;
        default:
            return false;
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return {};
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace

nlohmann::json error_to_json(const std::exception& error) {
    nlohmann::json j = {{"message", error.what()}};
    if (const auto* e = dynamic_cast<const Error*>(&error)) {
        j["code"] = error_code_name(e->code());
    } else if (dynamic_cast<const UsageError*>(&error)) {
        j["code"] = "UsageError";
    } else {
        j["code"] = "InternalError";
    }
    if (const auto* s = dynamic_cast<const SourceError*>(&error)) {
        j["location"] = {{"file", s->file()}, {"line", s->span().line}, {"column", s->span().column}};
        if (!s->expected().empty()) j["expected"] = s->expected();
    }
    return j;
}

int report_error(const Context& ctx, const std::exception& error) {
    int code = kExitRuntime;
    if (const auto* s = dynamic_cast<const SourceError*>(&error)) {
        const std::string source = s->span().line ? read_file(s->file()) : std::string();
        if (source.empty()) {
            *ctx.err << (s->file().empty() ? "<input>" : s->file()) << ':' << s->span().line << ':'
                     << s->span().column << ": error: " << s->what() << '\n';
        } else {
            *ctx.err << format_diagnostic(*s, source);
        }
        if (!s->expected().empty()) {
            *ctx.err << "  expected one of:";
            for (const auto& e : s->expected()) *ctx.err << ' ' << e;
            *ctx.err << '\n';
        }
        code = is_frontend_error(s->code()) ? kExitUsage : kExitRuntime;
    } else if (const auto* e = dynamic_cast<const Error*>(&error)) {
        *ctx.err << "error: " << error_code_name(e->code()) << ": " << e->what() << '\n';
        code = is_frontend_error(e->code()) ? kExitUsage : kExitRuntime;
    } else if (dynamic_cast<const UsageError*>(&error)) {
        *ctx.err << "error: " << error.what() << '\n';
        code = kExitUsage;
    } else {
        *ctx.err << "internal error: " << error.what() << '\n';
    }
    if (ctx.json()) ctx.emit({{"error", error_to_json(error)}, {"exit_code", code}});
    return code;
}

}  // namespace qdb::cli
