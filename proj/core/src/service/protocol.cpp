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


#include "qdb/service/protocol.hpp"

#include <algorithm>
#include <charconv>
#include <limits>

#include "qdb/errors.hpp"
#include "qdb/qasm/serialize.hpp"
#include "qdb/sim/backend.hpp"

namespace qdb::service {

namespace {

using nlohmann::json;

[[noreturn]] void violation(const std::string& message) { throw Error(ErrorCode::ProtocolViolation, message); }

const json& field(const json& payload, const char* key) {
    static const json kNull;
    const auto it = payload.find(key);
    return it == payload.end() ? kNull : *it;
}

std::uint64_t get_uint(const json& payload, const char* key, std::uint64_t fallback) {
    const json& v = field(payload, key);
    if (v.is_null()) return fallback;
    if (!v.is_number_unsigned()) violation(std::string("'") + key + "' must be a non-negative integer");
    return v.get<std::uint64_t>();
}

bool get_bool(const json& payload, const char* key, bool fallback) {
    const json& v = field(payload, key);
    if (v.is_null()) return fallback;
    if (!v.is_boolean()) violation(std::string("'") + key + "' must be a boolean");
    return v.get<bool>();
}

std::string get_string(const json& payload, const char* key) {
    const json& v = field(payload, key);
    if (!v.is_string()) violation(std::string("'") + key + "' must be a string");
    return v.get<std::string>();
}

// A qubit is either a global index or a reference such as "q[2]".
std::size_t qubit_ref(const json& v, const qasm::CircuitIR& ir) {
    if (v.is_number_unsigned()) {
        const auto q = v.get<std::size_t>();
        if (q >= ir.n_qubits) throw Error(ErrorCode::IndexOutOfRange, "qubit " + std::to_string(q) + " out of range");
        return q;
    }
    if (v.is_string()) {
        const auto text = v.get<std::string>();
        const auto open = text.find('[');
        if (open != std::string::npos && text.back() == ']') {
            const auto* reg = ir.find_qreg(text.substr(0, open));
            std::size_t idx = 0;
            const char* first = text.data() + open + 1;
            const char* last = text.data() + text.size() - 1;
            const auto [ptr, ec] = std::from_chars(first, last, idx);
            if (reg && ec == std::errc{} && ptr == last && idx < reg->size) return reg->offset + idx;
        }
        throw Error(ErrorCode::IndexOutOfRange, "cannot resolve qubit '" + text + "'");
    }
    violation("qubits are integers or strings such as \"q[0]\"");
}

std::vector<std::size_t> qubit_list(const json& payload, const char* key, const qasm::CircuitIR& ir) {
    const json& v = field(payload, key);
    if (v.is_number_unsigned() || v.is_string()) return {qubit_ref(v, ir)};
    if (!v.is_array() || v.empty()) violation(std::string("'") + key + "' must be a qubit or a non-empty list of qubits");
    std::vector<std::size_t> out;
    for (const auto& q : v) out.push_back(qubit_ref(q, ir));
    return out;
}

json error_payload(const Error& e) {
    json p = {{"code", error_code_name(e.code())}, {"message", e.what()}};
    if (const auto* s = dynamic_cast<const SourceError*>(&e)) {
        p["location"] = {{"file", s->file()}, {"line", s->span().line}, {"column", s->span().column}};
        if (!s->expected().empty()) p["expected"] = s->expected();
    }
    return p;
}

}  // namespace

std::string_view session_state_name(SessionState state) {
    switch (state) {
        case SessionState::Created: return "created";
        case SessionState::Loaded: return "loaded";
        case SessionState::Paused: return "paused";
        case SessionState::Running: return "running";
        case SessionState::Finished: return "finished";
    }
    return "created";
}

const std::vector<std::string>& ConnectionHandler::request_types() {
    static const std::vector<std::string> kTypes = {"hello",   "load",   "step",         "continue", "set-breakpoint",
                                                    "inspect", "assert", "separability", "clone",    "tomo",
                                                    "set-mode"};
    return kTypes;
}

ConnectionHandler::ConnectionHandler(Emit emit, HandlerOptions options)
    : emit_(std::move(emit)), options_(std::move(options)) {}

ConnectionHandler::~ConnectionHandler() = default;

void ConnectionHandler::send(const json& message) { emit_(message.dump()); }

void ConnectionHandler::event(const std::string& name, json payload) {
    payload["event"] = name;
    send({{"type", "event"}, {"payload", std::move(payload)}});
}

void ConnectionHandler::handle_frame(std::string_view frame) {
    auto reject = [&](const json& id, ErrorCode code, const std::string& message) {
        send({{"id", id}, {"type", "error"}, {"payload", {{"code", error_code_name(code)}, {"message", message}}}});
    };
    if (!frame.empty() && frame.back() == '\r') frame.remove_suffix(1);
    if (frame.size() > options_.max_frame_bytes) {
        reject(nullptr, ErrorCode::MalformedMessage, "frame exceeds " + std::to_string(options_.max_frame_bytes) + " bytes");
        return;
    }
    if (frame.find_first_not_of(" \t") == std::string_view::npos) return;

    json request = json::parse(frame.begin(), frame.end(), nullptr, false);
    if (request.is_discarded()) {
        reject(nullptr, ErrorCode::MalformedMessage, "frame is not valid JSON");
        return;
    }
    if (!request.is_object()) {
        reject(nullptr, ErrorCode::MalformedMessage, "frame must be a JSON object");
        return;
    }
    const json& id = field(request, "id");
    if (!id.is_number_integer() ||
        (id.is_number_unsigned() && id.get<std::uint64_t>() > std::numeric_limits<std::int64_t>::max())) {
        reject(nullptr, ErrorCode::ProtocolViolation, "request 'id' must be a 64-bit signed integer");
        return;
    }
    const auto id_value = id.get<std::int64_t>();
    if (last_id_ && id_value <= *last_id_) {
        reject(id, ErrorCode::ProtocolViolation,
               "request ids must increase; last was " + std::to_string(*last_id_));
        return;
    }
    last_id_ = id_value;

    const json& type = field(request, "type");
    const json& payload = field(request, "payload");
    if (!type.is_string()) {
        reject(id, ErrorCode::ProtocolViolation, "request 'type' must be a string");
        return;
    }
    if (!payload.is_null() && !payload.is_object()) {
        reject(id, ErrorCode::ProtocolViolation, "request 'payload' must be an object");
        return;
    }
    try {
        json result = dispatch(type.get<std::string>(), payload.is_null() ? json::object() : payload);
        send({{"id", id}, {"type", "result"}, {"payload", std::move(result)}});
    } catch (const Error& e) {
        send({{"id", id}, {"type", "error"}, {"payload", error_payload(e)}});
    } catch (const json::exception& e) {
        reject(id, ErrorCode::ProtocolViolation, e.what());
    } catch (const std::exception& e) {
        reject(id, ErrorCode::ProtocolViolation, std::string("internal error: ") + e.what());
    }
}

json ConnectionHandler::dispatch(const std::string& type, const json& payload) {
    if (type == "hello") return on_hello(payload);
    if (type == "load") return on_load(payload);
    if (type == "step") return on_step(payload);
    if (type == "continue") return on_continue(payload);
    if (type == "set-breakpoint") return on_set_breakpoint(payload);
    if (type == "inspect") return on_inspect(payload);
    if (type == "assert") return on_assert(payload);
    if (type == "separability") return on_separability(payload);
    if (type == "clone") return on_clone(payload);
    if (type == "tomo") return on_tomo(payload);
    if (type == "set-mode") return on_set_mode(payload);
    if (type == "event" || type == "result" || type == "error") violation("'" + type + "' messages are sent by the server");
    violation("unknown request type '" + type + "'");
}

debug::DebugSession& ConnectionHandler::require_session(std::string_view type) {
    if (!session_) violation(std::string(type) + " before load");
    return *session_;
}

json ConnectionHandler::on_hello(const json& payload) {
    const json& version = field(payload, "protocol");
    if (!version.is_null() && version != kProtocolVersion) {
        violation("unsupported protocol version " + version.dump() + "; server speaks " + std::to_string(kProtocolVersion));
    }
    json caps = request_types();
    caps.push_back("heartbeat");
    return {{"protocol", kProtocolVersion}, {"server", "qdb"}, {"capabilities", caps},
            {"state", session_state_name(state_)}};
}

json ConnectionHandler::on_load(const json& payload) {
    const std::string source = get_string(payload, "source");
    const std::string file = field(payload, "file").is_string() ? payload["file"].get<std::string>() : "<session>";
    debug::SessionOptions opts;
    opts.seed = get_uint(payload, "seed", 0);
    opts.shot_budget = get_uint(payload, "shot_budget", opts.shot_budget);
    if (field(payload, "mode").is_string()) opts.mode = debug::parse_mode(payload["mode"].get<std::string>());
    if (field(payload, "engine").is_string()) opts.engine.method = sim::parse_method(payload["engine"].get<std::string>());
    if (opts.shot_budget == 0) throw Error(ErrorCode::OutOfRange, "shot budget must be positive");

    qasm::LoadOptions load;
    load.file = file;
    load.include_path = options_.include_path;
    auto ir = std::make_shared<const qasm::CircuitIR>(qasm::load_circuit(source, load));
    auto session = std::make_unique<debug::DebugSession>(ir, opts);
    session_ = std::move(session);
    source_ = source;
    file_ = file;
    state_ = SessionState::Loaded;

    json lines = json::array();
    for (const auto& ins : ir->instructions) lines.push_back(ins.span.line);
    json directives = json::array();
    for (const auto& d : ir->directives) directives.push_back(qasm::directive_to_json(d));
    return {{"state", session_state_name(state_)},
            {"file", file},
            {"n_qubits", ir->n_qubits},
            {"n_clbits", ir->n_clbits},
            {"instructions", ir->instructions.size()},
            {"lines", lines},
            {"directives", directives},
            {"mode", debug::mode_name(session_->mode())},
            {"seed", session_->seed()},
            {"shot_budget", session_->shot_budget()}};
}

json ConnectionHandler::stopped(const debug::StopEvent& ev) {
    state_ = session_->finished() ? SessionState::Finished : SessionState::Paused;
    json payload = debug::to_json(ev);
    payload["state"] = session_state_name(state_);
    event(state_ == SessionState::Finished ? "finished" : "stopped", payload);
    return payload;
}

json ConnectionHandler::on_step(const json& payload) {
    auto& s = require_session("step");
    if (s.finished()) violation("step after the program finished");
    const auto count = get_uint(payload, "count", 1);
    if (count == 0) violation("'count' must be positive");
    debug::StopEvent total;
    for (std::uint64_t i = 0; i < count && !s.finished(); ++i) {
        auto ev = s.step();
        total.reason = ev.reason;
        total.steps += ev.steps;
        total.assertions.insert(total.assertions.end(), ev.assertions.begin(), ev.assertions.end());
    }
    total.position = s.position();
    return stopped(total);
}

json ConnectionHandler::on_continue(const json&) {
    auto& s = require_session("continue");
    if (s.finished()) violation("continue after the program finished");
    state_ = SessionState::Running;
    auto last = std::chrono::steady_clock::now();
    std::uint64_t beats = 0;
    const auto tick = [&] {
        const auto now = std::chrono::steady_clock::now();
        if (now - last < options_.heartbeat) return;
        last = now;
        event("heartbeat", {{"position", s.position()}, {"beat", ++beats}, {"state", "running"}});
    };
    try {
        return stopped(s.resume(tick));
    } catch (...) {
        state_ = s.finished() ? SessionState::Finished : SessionState::Paused;
        throw;
    }
}

json ConnectionHandler::on_set_breakpoint(const json& payload) {
    auto& s = require_session("set-breakpoint");
    const bool remove = get_bool(payload, "remove", false);
    std::size_t index = 0;
    if (!field(payload, "line").is_null()) {
        const auto line = get_uint(payload, "line", 0);
        if (remove) {
            const auto hits = s.ir().instructions_at_line(line);
            if (hits.empty()) throw Error(ErrorCode::UnresolvableLocation, "line " + std::to_string(line) + " has no instruction");
            index = hits.front();
        } else {
            index = s.add_breakpoint_at_line(line);
        }
    } else if (!field(payload, "index").is_null()) {
        index = get_uint(payload, "index", 0);
        if (!remove) s.add_breakpoint(index);
    } else {
        violation("set-breakpoint needs 'line' or 'index'");
    }
    if (remove) s.remove_breakpoint(index);
    return {{"index", index},
            {"line", index < s.ir().instructions.size() ? json(s.ir().instructions[index].span.line) : json(nullptr)},
            {"breakpoints", s.breakpoints()}};
}

json ConnectionHandler::on_inspect(const json&) { return debug::to_json(require_session("inspect").inspect()); }

json ConnectionHandler::on_assert(const json& payload) {
    auto& s = require_session("assert");
    const auto text = get_string(payload, "directive");
    return debug::to_json(s.evaluate(qasm::parse_directive(text, s.ir())));
}

json ConnectionHandler::on_separability(const json& payload) {
    auto& s = require_session("separability");
    return debug::to_json(s.separability(get_bool(payload, "bipartitions", false)));
}

json ConnectionHandler::on_clone(const json& payload) {
    auto& s = require_session("clone");
    const auto kind = get_string(payload, "kind");
    if (kind == "exact") {
        s.clone_exact(qubit_list(payload, "source", s.ir()), qubit_list(payload, "blank", s.ir()));
        return {{"kind", "exact"}, {"position", s.position()}};
    }
    if (kind == "approx") {
        const auto report = s.clone_approx(qubit_ref(field(payload, "source"), s.ir()),
                                           qubit_ref(field(payload, "copy"), s.ir()),
                                           qubit_ref(field(payload, "ancilla"), s.ir()));
        json out = debug::to_json(report);
        out["kind"] = "approx";
        out["position"] = s.position();
        return out;
    }
    violation("clone 'kind' must be \"exact\" or \"approx\"");
}

json ConnectionHandler::on_tomo(const json& payload) {
    auto& s = require_session("tomo");
    const auto qubits = qubit_list(payload, "qubits", s.ir());
    const auto shots = get_uint(payload, "shots", 10000);
    if (shots == 0) violation("'shots' must be positive");
    return debug::to_json(s.tomography(qubits, shots, get_bool(payload, "exact", false)));
}

json ConnectionHandler::on_set_mode(const json& payload) {
    auto& s = require_session("set-mode");
    const auto mode = debug::parse_mode(get_string(payload, "mode"));
    const auto budget = get_uint(payload, "shot_budget", s.shot_budget());
    if (budget == 0) throw Error(ErrorCode::OutOfRange, "shot budget must be positive");
    s.set_mode(mode);
    s.set_shot_budget(budget);
    return {{"mode", debug::mode_name(mode)}, {"shot_budget", budget}, {"state", session_state_name(state_)}};
}

}  // namespace qdb::service
