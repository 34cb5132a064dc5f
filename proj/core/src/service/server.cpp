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


#include "qdb/service/server.hpp"

#include <arpa/inet.h>
#include <netinet/in.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>

#include "qdb/errors.hpp"

namespace qdb::service {

namespace {

bool send_all(int fd, const std::string& data) {
    std::size_t sent = 0;
    while (sent < data.size()) {
        const ssize_t n = ::send(fd, data.data() + sent, data.size() - sent, MSG_NOSIGNAL);
        if (n < 0 && errno == EINTR) continue;
        if (n <= 0) return false;
        sent += static_cast<std::size_t>(n);
    }
    return true;
}

}  // namespace

void serve_stdio(std::istream& in, std::ostream& out, const HandlerOptions& options) {
    ConnectionHandler handler([&](const std::string& frame) { out << frame << '\n' << std::flush; }, options);
    std::string line;
    while (std::getline(in, line)) handler.handle_frame(line);
}

TcpServer::TcpServer(TcpOptions options) : options_(std::move(options)) {
    listen_fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
    if (listen_fd_ < 0) throw Error(ErrorCode::OutOfRange, std::string("socket: ") + std::strerror(errno));
    const int yes = 1;
    ::setsockopt(listen_fd_, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof yes);
    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_port = htons(options_.port);
    if (::inet_pton(AF_INET, options_.host.c_str(), &addr.sin_addr) != 1) {
        ::close(listen_fd_);
        throw Error(ErrorCode::OutOfRange, "invalid IPv4 address '" + options_.host + "'");
    }
    if (::bind(listen_fd_, reinterpret_cast<sockaddr*>(&addr), sizeof addr) < 0 || ::listen(listen_fd_, 16) < 0) {
        const std::string why = std::strerror(errno);
        ::close(listen_fd_);
        throw Error(ErrorCode::OutOfRange, "cannot listen on " + options_.host + ":" + std::to_string(options_.port) +
                                               ": " + why);
    }
    socklen_t len = sizeof addr;
    ::getsockname(listen_fd_, reinterpret_cast<sockaddr*>(&addr), &len);
    port_ = ntohs(addr.sin_port);
}

TcpServer::~TcpServer() {
    stop();
    std::list<std::jthread> workers;
    {
        std::lock_guard lock(mu_);
        workers.swap(workers_);
    }
    workers.clear();  // joins
    if (listen_fd_ >= 0) ::close(listen_fd_);
}

void TcpServer::stop() {
    stopping_ = true;
    std::lock_guard lock(mu_);
    for (int fd : open_fds_) ::shutdown(fd, SHUT_RDWR);
}

void TcpServer::run() {
    while (!stopping_) {
        pollfd p{listen_fd_, POLLIN, 0};
        const int ready = ::poll(&p, 1, 100);
        if (ready <= 0) continue;
        const int fd = ::accept(listen_fd_, nullptr, nullptr);
        if (fd < 0) continue;
        std::lock_guard lock(mu_);
        if (stopping_) {
            ::close(fd);
            break;
        }
        open_fds_.push_back(fd);
        workers_.emplace_back([this, fd] { serve_connection(fd); });
    }
}

void TcpServer::serve_connection(int fd) {
    bool alive = true;
    ConnectionHandler handler([&](const std::string& frame) { alive = alive && send_all(fd, frame + "\n"); },
                              options_.handler);
    std::string buffer;
    bool overflow = false;
    char chunk[4096];
    while (alive && !stopping_) {
        const ssize_t n = ::recv(fd, chunk, sizeof chunk, 0);
        if (n < 0 && errno == EINTR) continue;
        if (n <= 0) break;
        buffer.append(chunk, static_cast<std::size_t>(n));
        std::size_t start = 0;
        for (std::size_t nl; (nl = buffer.find('\n', start)) != std::string::npos; start = nl + 1) {
            if (overflow) {
                overflow = false;  // tail of a frame that was already rejected
                continue;
            }
            handler.handle_frame(std::string_view(buffer).substr(start, nl - start));
        }
        buffer.erase(0, start);
        if (buffer.size() > options_.handler.max_frame_bytes) {
            if (!overflow) handler.handle_frame(buffer);  // reports the oversized frame
            overflow = true;
            buffer.clear();
        }
    }
    {
        std::lock_guard lock(mu_);
        open_fds_.remove(fd);
    }
    ::close(fd);
    ++served_;
}

}  // namespace qdb::service
