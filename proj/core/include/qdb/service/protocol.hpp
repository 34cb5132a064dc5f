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

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "qdb/debug/session.hpp"

namespace qdb::service {

inline constexpr int kProtocolVersion = 1;

enum class SessionState { Created, Loaded, Paused, Running, Finished };

std::string_view session_state_name(SessionState state);

struct HandlerOptions {
    std::vector<std::filesystem::path> include_path;
    /// Interval between heartbeat events while a `continue` is running.
    std::chrono::milliseconds heartbeat{5000};
    /// Frames longer than this are rejected without being parsed.
    std::size_t max_frame_bytes = 1 << 20;
};

/// Protocol state for one connection. Feed it one frame (a line without the
/// trailing newline) at a time; every outgoing frame goes through `emit`,
/// already serialized and without a newline.
class ConnectionHandler {
 public:
    using Emit = std::function<void(const std::string&)>;

    ConnectionHandler(Emit emit, HandlerOptions options = {});
    ~ConnectionHandler();

    void handle_frame(std::string_view frame);

    SessionState state() const noexcept { return state_; }
    const debug::DebugSession* session() const noexcept { return session_.get(); }

    /// Request types accepted from clients, in protocol order.
    static const std::vector<std::string>& request_types();

 private:
    nlohmann::json dispatch(const std::string& type, const nlohmann::json& payload);
    nlohmann::json on_hello(const nlohmann::json& payload);
    nlohmann::json on_load(const nlohmann::json& payload);
    nlohmann::json on_step(const nlohmann::json& payload);
    nlohmann::json on_continue(const nlohmann::json& payload);
    nlohmann::json on_set_breakpoint(const nlohmann::json& payload);
    nlohmann::json on_inspect(const nlohmann::json& payload);
    nlohmann::json on_assert(const nlohmann::json& payload);
    nlohmann::json on_separability(const nlohmann::json& payload);
    nlohmann::json on_clone(const nlohmann::json& payload);
    nlohmann::json on_tomo(const nlohmann::json& payload);
    nlohmann::json on_set_mode(const nlohmann::json& payload);

    debug::DebugSession& require_session(std::string_view type);
    nlohmann::json stopped(const debug::StopEvent& event);
    void send(const nlohmann::json& message);
    void event(const std::string& name, nlohmann::json payload);

    Emit emit_;
    HandlerOptions options_;
    SessionState state_ = SessionState::Created;
    std::unique_ptr<debug::DebugSession> session_;
    std::string source_;
    std::string file_;
    std::optional<std::int64_t> last_id_;
};

}  // namespace qdb::service
