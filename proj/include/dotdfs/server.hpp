/*
 * Copyright (C) 2026 The DotDFS Project
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#ifndef DOTDFS_SERVER_HPP
#define DOTDFS_SERVER_HPP

#include <atomic>
#include <chrono>
#include <condition_variable>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "dotdfs/channel.hpp"
#include "dotdfs/log.hpp"
#include "dotdfs/wire.hpp"

// The daemon: single-port acceptor, service dispatch, GUID-keyed session
// pool, the waiter loop that parks a session until its n streams arrive, and
// the single-context readiness-multiplexed transfer executor.

namespace dotdfs::server {

// Reserved path token: transfers addressed here never touch storage
// (upload discards, download streams zeros). Benchmark plumbing.
inline constexpr const char* kMemSinkPath = "::mem::";

struct Config {
    uint16_t port = 2799;
    std::string bind_addr = "0.0.0.0";
    std::string root; // all paths confined under here
    size_t session_cap = 64;
    std::chrono::milliseconds wlm_timeout{60000};
    std::chrono::milliseconds handshake_timeout{30000};
    std::string keypair_path;    // PEM; generated and saved when missing
    std::string credential_path; // required
    log::Level log_level = log::Level::Warn;
    uint64_t small_file_threshold = 1 << 20;
    bool allow_plaintext_switch = true;
    dotsec::SuitePolicy suite_policy;

    // Injected time source for timeout logic; null = steady_clock.
    std::function<std::chrono::steady_clock::time_point()> clock;
};

// Line-oriented `key = value` file; unknown keys rejected.
Config parse_config_file(const std::string& path);
void apply_config_entry(Config& cfg, const std::string& key, const std::string& value);

// --- session state chart (states 1..15) --------------------------------------
// 1 accepted, 2 service selected, 3 secured, 4 authenticated, 5 mode chosen,
// 6 params received + GUID checked, 7 waiting for streams, 8 stream added,
// 9 executor start, 10 readiness wait, 11 stream ready, 12 block stored /
// sent, 13 stream retired, 14 done + released, 15 failed + released.

enum class CfsmState : int {
    Accepted = 1,
    ServiceSelected = 2,
    Secured = 3,
    Authenticated = 4,
    ModeSelected = 5,
    ParamsChecked = 6,
    WaitStreams = 7,
    StreamAdded = 8,
    ExecutorStart = 9,
    ReadinessWait = 10,
    StreamReady = 11,
    BlockStored = 12,
    StreamRetired = 13,
    Released = 14,
    Failed = 15,
};

bool cfsm_edge_allowed(int from, int to);

// (session key, from, to); session key is the GUID hex or a connection tag.
using CfsmRecorder = std::function<void(const std::string&, int, int)>;

struct StatsSnapshot {
    uint64_t sessions_started = 0;
    uint64_t sessions_active = 0;
    uint64_t sessions_failed = 0;
    // manager execution contexts currently alive for any single session,
    // and the historical per-session peak (the one-thread-per-session claim)
    uint64_t manager_contexts_active = 0;
    uint64_t manager_contexts_peak = 0;
    // peak of any session's steady-state buffer allocation:
    // coalescing window capacity + frame scratch capacity
    uint64_t session_buffer_peak = 0;
    uint64_t bytes_received = 0;
    uint64_t bytes_sent = 0;
    uint64_t file_opens = 0; // File::open_count delta since start
};

class Daemon {
public:
    explicit Daemon(Config cfg);
    ~Daemon();

    Daemon(const Daemon&) = delete;
    Daemon& operator=(const Daemon&) = delete;

    void start(); // throws Error(BindFailed / ConfigError)
    void stop(std::chrono::milliseconds grace = std::chrono::milliseconds(5000));
    bool running() const { return running_.load(); }

    uint16_t port() const;
    const Config& config() const { return cfg_; }

    void set_cfsm_recorder(CfsmRecorder rec);
    StatsSnapshot stats() const;

private:
    struct Session;
    struct Impl;
    std::unique_ptr<Impl> impl_;
    Config cfg_;
    std::atomic<bool> running_{false};
};

} // namespace dotdfs::server

#endif
