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

#include <istream>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "qdb/debug/session.hpp"
#include "support.hpp"

namespace qdb::cli {

/// Line-oriented debugger front end. A line may hold several commands
/// separated by ';'.
class Repl {
 public:
    Repl(const Context& ctx, std::shared_ptr<const qasm::CircuitIR> ir, debug::SessionOptions options);

    /// Reads commands until `quit` or end of input. Returns 0 when every
    /// assertion evaluated so far passed and 1 otherwise.
    int run(std::istream& in, bool interactive);
    /// Returns false once `quit` has been seen.
    bool execute_line(std::string_view line);

    debug::DebugSession& session() noexcept { return session_; }
    int exit_code() const;

    static std::string help_text();

 private:
    void execute(const std::vector<std::string>& words);
    void reply(const std::string& verb, const nlohmann::json& result, const std::string& text);
    void report_stop(const std::string& verb, const debug::StopEvent& ev);
    void flush_trace();

    void cmd_step(const std::vector<std::string>& args);
    void cmd_continue();
    void cmd_break(const std::vector<std::string>& args, bool remove);
    void cmd_state();
    void cmd_prob(const std::vector<std::string>& args);
    void cmd_sep(const std::vector<std::string>& args);
    void cmd_clone_exact(const std::vector<std::string>& args);
    void cmd_clone_approx(const std::vector<std::string>& args);
    void cmd_tomo(const std::vector<std::string>& args);
    void cmd_mode(const std::vector<std::string>& args);
    void cmd_shots(const std::vector<std::string>& args);
    void cmd_assert(std::string_view text);
    void cmd_where();

    const Context& ctx_;
    debug::DebugSession session_;
    std::vector<debug::AssertionResult> manual_;
    std::size_t traced_ = 0;
    bool quit_ = false;
};

}  // namespace qdb::cli
