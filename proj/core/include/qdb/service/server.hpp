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

#include <atomic>
#include <cstdint>
#include <istream>
#include <list>
#include <mutex>
#include <ostream>
#include <string>
#include <thread>

#include "qdb/service/protocol.hpp"

namespace qdb::service {

/// Serves one session over a pair of streams until EOF.
void serve_stdio(std::istream& in, std::ostream& out, const HandlerOptions& options = {});

struct TcpOptions {
    std::string host = "127.0.0.1";
    /// 0 picks a free port; see TcpServer::port().
    std::uint16_t port = 0;
    HandlerOptions handler;
};

/// Newline-delimited JSON over TCP, one session and one thread per
/// connection. Binds on construction; throws Error(OutOfRange) if it cannot.
class TcpServer {
 public:
    explicit TcpServer(TcpOptions options = {});
    ~TcpServer();
    TcpServer(const TcpServer&) = delete;
    TcpServer& operator=(const TcpServer&) = delete;

    std::uint16_t port() const noexcept { return port_; }

    /// Accepts connections until stop() is called.
    void run();
    void stop();

    std::size_t connections_served() const noexcept { return served_; }

 private:
    void serve_connection(int fd);

    TcpOptions options_;
    int listen_fd_ = -1;
    std::uint16_t port_ = 0;
    std::atomic<bool> stopping_{false};
    std::atomic<std::size_t> served_{0};
    std::mutex mu_;
    std::list<std::jthread> workers_;
    std::list<int> open_fds_;
};

}  // namespace qdb::service
