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

#include <arpa/inet.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <sys/time.h>
#include <unistd.h>

#include <cmath>
#include <map>
#include <random>
#include <sstream>
#include <thread>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "oracles.hpp"
#include "qdb/service/protocol.hpp"
#include "qdb/service/server.hpp"

namespace qdb::service {
namespace {

using nlohmann::json;

// Collects every frame the handler emits.
struct Client {
    std::vector<std::string> frames;
    ConnectionHandler handler;

    explicit Client(HandlerOptions options = {})
        : handler([this](const std::string& f) { frames.push_back(f); }, std::move(options)) {}

    // Sends one request and returns the frames it produced.
    std::vector<json> call(const json& request) {
        const std::size_t before = frames.size();
        handler.handle_frame(request.dump());
        std::vector<json> out;
        for (std::size_t i = before; i < frames.size(); ++i) out.push_back(json::parse(frames[i]));
        return out;
    }

    json result(const json& request) {
        const auto out = call(request);
        EXPECT_FALSE(out.empty());
        return out.back();
    }
};

json request(std::int64_t id, const std::string& type, json payload = json::object()) {
    return {{"id", id}, {"type", type}, {"payload", std::move(payload)}};
}

json load_fig6(std::int64_t id, std::uint64_t seed = 0) {
    return request(id, "load", {{"source", testing::read_data("fig6.qasm")}, {"file", "fig6.qasm"}, {"seed", seed}});
}

bool contains_key(const json& j, const std::string& key) {
    if (j.is_object()) {
        for (const auto& [k, v] : j.items()) {
            if (k == key || contains_key(v, key)) return true;
        }
    } else if (j.is_array()) {
        for (const auto& v : j) {
            if (contains_key(v, key)) return true;
        }
    }
    return false;
}

std::vector<std::string> replay(const std::string& transcript, HandlerOptions options = {}) {
    std::istringstream in(transcript);
    std::ostringstream out;
    serve_stdio(in, out, options);
    std::vector<std::string> lines;
    std::istringstream split(out.str());
    for (std::string line; std::getline(split, line);) lines.push_back(line);
    return lines;
}

TEST(Protocol, Hello) {
    Client c;
    const auto r = c.result(request(1, "hello"));
    EXPECT_EQ(r["id"], 1);
    EXPECT_EQ(r["type"], "result");
    EXPECT_EQ(r["payload"]["protocol"], 1);
    const auto caps = r["payload"]["capabilities"];
    EXPECT_NE(std::find(caps.begin(), caps.end(), "tomo"), caps.end());
    EXPECT_EQ(c.result(request(2, "hello", {{"protocol", 9}}))["type"], "error");
}

TEST(Protocol, LoadContinueInspectFig6) {
    Client c;
    EXPECT_EQ(c.result(load_fig6(1))["payload"]["state"], "loaded");
    EXPECT_EQ(c.handler.state(), SessionState::Loaded);
    c.result(request(2, "set-breakpoint", {{"index", 4}}));
    auto out = c.call(request(3, "continue"));
    ASSERT_EQ(out.size(), 2u);
    EXPECT_EQ(out[0]["type"], "event");
    EXPECT_EQ(out[0]["payload"]["event"], "stopped");
    EXPECT_FALSE(out[0].contains("id"));
    EXPECT_EQ(c.handler.state(), SessionState::Paused);

    const auto snap = c.result(request(4, "inspect"))["payload"]["state"];
    const double want[8] = {0.5, -0.5, 0, 0, 0, 0, 0.5, -0.5};
    for (std::size_t i = 0; i < 8; ++i) {
        EXPECT_NEAR(snap["amplitudes"][i][0].get<double>(), want[i], 1e-12) << i;
        EXPECT_NEAR(snap["amplitudes"][i][1].get<double>(), 0.0, 1e-12);
    }

    out = c.call(request(5, "continue"));
    ASSERT_EQ(out.size(), 2u);
    EXPECT_EQ(out[0]["payload"]["event"], "finished");
    EXPECT_EQ(out[1]["payload"]["state"], "finished");
    EXPECT_EQ(c.handler.state(), SessionState::Finished);
}

TEST(Protocol, DeviceModeInspectHasNoAmplitudes) {
    Client c;
    c.result(load_fig6(1, 3));
    c.result(request(2, "step", {{"count", 4}}));
    EXPECT_EQ(c.result(request(3, "set-mode", {{"mode", "device"}}))["payload"]["mode"], "device");
    const auto r = c.result(request(4, "inspect"));
    ASSERT_EQ(r["type"], "result");
    EXPECT_FALSE(contains_key(r, "amplitudes"));
    EXPECT_FALSE(r["payload"].contains("state"));
    EXPECT_EQ(r["payload"]["shots"], 1060);
    EXPECT_EQ(r["payload"]["histogram"].size(), 4u);
    EXPECT_EQ(c.handler.session()->cursor().state_reads(), 0u);
}

TEST(Protocol, ViolationsLeaveStateUnchanged) {
    Client c;
    auto r = c.result(request(1, "step"));
    EXPECT_EQ(r["type"], "error");
    EXPECT_EQ(r["id"], 1);
    EXPECT_EQ(r["payload"]["code"], "ProtocolViolation");
    EXPECT_EQ(c.handler.state(), SessionState::Created);

    c.result(load_fig6(2));
    c.result(request(3, "step"));
    const auto position = c.handler.session()->position();
    for (const auto& bad : {request(4, "set-mode", {{"mode", "sideways"}}), request(5, "tomo", {{"qubits", json::array()}}),
                            request(6, "clone", {{"kind", "approx"}, {"source", 0}, {"copy", 1}, {"ancilla", 2}}),
                            request(7, "set-breakpoint", {{"line", 2}}), request(8, "result"),
                            request(9, "load", {{"source", "OPENQASM 2.0;\nqreg q[;\n"}}),
                            request(10, "assert", {{"directive", "assert-classical q -> 2"}}),
                            request(11, "warp")}) {
        EXPECT_EQ(c.result(bad)["type"], "error") << bad.dump();
        EXPECT_EQ(c.handler.state(), SessionState::Paused);
        EXPECT_EQ(c.handler.session()->position(), position);
        EXPECT_EQ(c.handler.session()->mode(), debug::Mode::Omniscient);
    }
}

TEST(Protocol, LoadErrorCarriesLocation) {
    Client c;
    const auto r = c.result(request(1, "load", {{"source", "OPENQASM 2.0;\nqreg q[2];\nh q[0];\n"}, {"file", "x.qasm"}}));
    EXPECT_EQ(r["type"], "error");
    EXPECT_EQ(r["payload"]["code"], "SemanticError");
    EXPECT_EQ(r["payload"]["location"]["line"], 3);
    EXPECT_EQ(r["payload"]["location"]["column"], 1);
}

TEST(Protocol, MalformedFramesGetNullIds) {
    Client c;
    for (const char* frame : {"{", "[1,2]", "42", "{\"type\":\"hello\"}", "{\"id\":\"7\",\"type\":\"hello\"}", "nul"}) {
        c.frames.clear();
        c.handler.handle_frame(frame);
        ASSERT_EQ(c.frames.size(), 1u) << frame;
        const auto r = json::parse(c.frames[0]);
        EXPECT_EQ(r["type"], "error");
        EXPECT_TRUE(r["id"].is_null()) << frame;
    }
    EXPECT_EQ(c.result(request(100, "hello"))["type"], "result");
}

TEST(Protocol, IdsMustIncrease) {
    Client c;
    c.result(request(5, "hello"));
    const auto r = c.result(request(5, "hello"));
    EXPECT_EQ(r["type"], "error");
    EXPECT_EQ(r["id"], 5);
    EXPECT_EQ(c.result(request(6, "hello"))["type"], "result");
}

TEST(Protocol, OversizedFrameRejected) {
    HandlerOptions opts;
    opts.max_frame_bytes = 64;
    Client c(opts);
    c.handler.handle_frame(std::string(100, ' ') + "{}");
    ASSERT_EQ(c.frames.size(), 1u);
    EXPECT_EQ(json::parse(c.frames[0])["payload"]["code"], "MalformedMessage");
}

TEST(Protocol, HeartbeatWhileRunning) {
    HandlerOptions opts;
    opts.heartbeat = std::chrono::milliseconds(0);
    Client c(opts);
    c.result(load_fig6(1));
    const auto out = c.call(request(2, "continue"));
    std::size_t beats = 0;
    for (const auto& f : out) {
        if (f["type"] == "event" && f["payload"]["event"] == "heartbeat") {
            ++beats;
            EXPECT_EQ(f["payload"]["state"], "running");
        }
    }
    EXPECT_EQ(beats, 6u);
    EXPECT_EQ(out.back()["type"], "result");
}

TEST(Protocol, CloneAndTomographyOverTheWire) {
    Client c;
    c.result(request(1, "load", {{"source", "OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[3];\nx q[0];\n"}}));
    c.result(request(2, "continue"));
    const auto clone = c.result(request(3, "clone", {{"kind", "approx"}, {"source", "q[0]"}, {"copy", 1}, {"ancilla", 2}}));
    ASSERT_EQ(clone["type"], "result") << clone.dump();
    EXPECT_NEAR(clone["payload"]["fidelity_source"].get<double>(), 5.0 / 6.0, 1e-9);
    const auto tomo = c.result(request(4, "tomo", {{"qubits", {1}}, {"exact", true}}));
    ASSERT_EQ(tomo["type"], "result") << tomo.dump();
    EXPECT_NEAR(tomo["payload"]["purity"].get<double>(), 13.0 / 18.0, 1e-9);
}

TEST(Protocol, EveryRequestAnsweredOnce) {
    const auto transcript = testing::read_data("transcripts/fig6_session.ndjson");
    const auto lines = replay(transcript);
    std::map<std::int64_t, int> answers;
    int null_ids = 0;
    for (const auto& l : lines) {
        const auto j = json::parse(l);
        if (j["type"] == "event") {
            EXPECT_FALSE(j.contains("id"));
            continue;
        }
        if (j["id"].is_null()) {
            ++null_ids;
        } else {
            ++answers[j["id"].get<std::int64_t>()];
        }
    }
    EXPECT_EQ(null_ids, 1);
    ASSERT_EQ(answers.size(), 18u);
    for (const auto& [id, n] : answers) EXPECT_EQ(n, 1) << id;
}

TEST(Protocol, ReplayIsByteIdentical) {
    const auto transcript = testing::read_data("transcripts/fig6_session.ndjson");
    const auto first = replay(transcript);
    const auto second = replay(transcript);
    EXPECT_EQ(first, second);
    EXPECT_GT(first.size(), 18u);
}

std::string random_frame(std::mt19937_64& rng, const std::vector<std::string>& valid) {
    std::uniform_int_distribution<int> kind(0, 5);
    std::string frame;
    switch (kind(rng)) {
        case 0: {  // random bytes
            const std::size_t n = rng() % 200;
            for (std::size_t i = 0; i < n; ++i) {
                char ch = static_cast<char>(rng() % 256);
                frame.push_back(ch == '\n' ? ' ' : ch);
            }
            break;
        }
        case 1: {  // truncated valid frame
            const auto& v = valid[rng() % valid.size()];
            frame = v.substr(0, rng() % v.size());
            break;
        }
        case 2: {  // valid frame with a byte flipped
            frame = valid[rng() % valid.size()];
            frame[rng() % frame.size()] = static_cast<char>(rng() % 128);
            if (frame.find('\n') != std::string::npos) frame = "{";
            break;
        }
        case 3: {  // well-formed JSON of the wrong shape
            const json shapes[] = {json::array({1, 2}), json("text"), json(3.5), json(nullptr),
                                   json::object({{"id", "x"}, {"type", "hello"}}),
                                   json::object({{"id", static_cast<std::int64_t>(rng() % 1000)}, {"type", 17}}),
                                   json::object({{"id", static_cast<std::int64_t>(rng() % 1000)}, {"type", "inspect"},
                                                 {"payload", json::array()}})};
            frame = shapes[rng() % std::size(shapes)].dump();
            break;
        }
        case 4: {  // known type with a random payload
            const auto& types = ConnectionHandler::request_types();
            json payload = {{"qubits", static_cast<int>(rng() % 7) - 2}, {"count", -1}, {"mode", "x"},
                            {"source", std::string(rng() % 20, 'q')}, {"kind", "approx"}, {"line", 1000}};
            frame = json{{"id", static_cast<std::int64_t>(rng() % 100000)}, {"type", types[rng() % types.size()]},
                         {"payload", payload}}
                        .dump();
            break;
        }
        default:
            frame = "{\"id\": " + std::to_string(rng()) + ", \"type\": \"" + std::string(rng() % 5, 'z') + "\"}";
    }
    return frame;
}

TEST(Fuzz, TenThousandFramesNeverCrash) {
    const std::vector<std::string> valid = {load_fig6(1).dump(), request(2, "continue").dump(),
                                            request(3, "inspect").dump(), request(4, "tomo", {{"qubits", {0}}}).dump()};
    std::mt19937_64 rng(2026);
    Client fuzzed;
    Client clean;
    Client reference;
    std::int64_t next = 1;
    const std::vector<json> script = {load_fig6(0, 5), request(0, "step"), request(0, "inspect"),
                                      request(0, "set-mode", {{"mode", "device"}}), request(0, "inspect"),
                                      request(0, "continue"), request(0, "separability")};
    std::vector<std::string> clean_out, reference_out;
    for (int i = 0; i < 10000; ++i) {
        const std::size_t before = fuzzed.frames.size();
        const std::string frame = random_frame(rng, valid);
        fuzzed.handler.handle_frame(frame);
        for (std::size_t k = before; k < fuzzed.frames.size(); ++k) {
            ASSERT_FALSE(json::parse(fuzzed.frames[k], nullptr, false).is_discarded());
        }
        const bool blank = frame.find_first_not_of(" \t\r") == std::string::npos;
        ASSERT_TRUE(blank || fuzzed.frames.size() > before) << "frame " << i << " got no answer";
        if (i % 1500 == 0 && static_cast<std::size_t>(next) <= script.size()) {
            json r = script[static_cast<std::size_t>(next - 1)];
            r["id"] = next++;
            clean.handler.handle_frame(r.dump());
        }
        fuzzed.frames.resize(std::min<std::size_t>(fuzzed.frames.size(), 16));
    }
    for (std::size_t k = 0; k < script.size(); ++k) {
        json r = script[k];
        r["id"] = static_cast<std::int64_t>(k + 1);
        reference.handler.handle_frame(r.dump());
    }
    EXPECT_EQ(clean.frames, reference.frames);
}

// --- TCP -------------------------------------------------------------------------

class TcpClient {
 public:
    explicit TcpClient(std::uint16_t port) {
        fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
        sockaddr_in addr{};
        addr.sin_family = AF_INET;
        addr.sin_port = htons(port);
        ::inet_pton(AF_INET, "127.0.0.1", &addr.sin_addr);
        connected_ = ::connect(fd_, reinterpret_cast<sockaddr*>(&addr), sizeof addr) == 0;
        timeval timeout{10, 0};
        ::setsockopt(fd_, SOL_SOCKET, SO_RCVTIMEO, &timeout, sizeof timeout);
    }
    ~TcpClient() { ::close(fd_); }

    bool connected() const { return connected_; }
    void send(const std::string& text) { ::send(fd_, text.data(), text.size(), MSG_NOSIGNAL); }

    std::string read_line() {
        while (true) {
            const auto nl = buffer_.find('\n');
            if (nl != std::string::npos) {
                std::string line = buffer_.substr(0, nl);
                buffer_.erase(0, nl + 1);
                return line;
            }
            char chunk[4096];
            const ssize_t n = ::recv(fd_, chunk, sizeof chunk, 0);
            if (n <= 0) return {};
            buffer_.append(chunk, static_cast<std::size_t>(n));
        }
    }

    // Reads frames until the answer to `id` arrives.
    std::vector<std::string> until_answer(std::int64_t id) {
        std::vector<std::string> out;
        while (true) {
            auto line = read_line();
            if (line.empty()) return out;
            out.push_back(line);
            const auto j = json::parse(line);
            if (j["type"] != "event" && j["id"] == id) return out;
        }
    }

 private:
    int fd_ = -1;
    bool connected_ = false;
    std::string buffer_;
};

TEST(Tcp, FramesMatchStdioMode) {
    TcpServer server;
    std::thread t([&] { server.run(); });
    const auto transcript = testing::read_data("transcripts/fig6_session.ndjson");
    const auto expected = replay(transcript);
    {
        TcpClient client(server.port());
        ASSERT_TRUE(client.connected());
        // Send in two uneven chunks to exercise frame reassembly.
        client.send(transcript.substr(0, 37));
        client.send(transcript.substr(37));
        std::vector<std::string> got;
        while (got.size() < expected.size()) {
            auto line = client.read_line();
            if (line.empty()) break;
            got.push_back(line);
        }
        EXPECT_EQ(got, expected);
    }
    server.stop();
    t.join();
}

TEST(Tcp, FuzzedConnectionDoesNotDisturbAnother) {
    TcpServer server;
    std::thread t([&] { server.run(); });
    {
        TcpClient noisy(server.port());
        TcpClient good(server.port());
        ASSERT_TRUE(noisy.connected() && good.connected());
        std::mt19937_64 rng(7);
        const std::vector<std::string> valid = {load_fig6(1).dump(), request(2, "continue").dump()};
        std::string burst;
        for (int i = 0; i < 500; ++i) burst += random_frame(rng, valid) + "\n";
        noisy.send(burst);

        good.send(load_fig6(1, 9).dump() + "\n");
        good.until_answer(1);
        good.send(request(2, "continue").dump() + "\n");
        good.until_answer(2);
        good.send(request(3, "inspect").dump() + "\n");
        const auto frames = good.until_answer(3);
        const auto snap = json::parse(frames.back())["payload"]["state"];
        EXPECT_EQ(snap["n_qubits"], 3);
        noisy.send(request(1000000, "hello").dump() + "\n");
        bool answered = false;
        for (int i = 0; i < 2000 && !answered; ++i) {
            const auto line = noisy.read_line();
            if (line.empty()) break;
            const auto j = json::parse(line);
            answered = j["id"] == 1000000;
        }
        EXPECT_TRUE(answered);
    }
    server.stop();
    t.join();
}

}  // namespace
}  // namespace qdb::service
