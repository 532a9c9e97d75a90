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
#ifndef DOTDFS_TESTS_HARNESS_HPP
#define DOTDFS_TESTS_HARNESS_HPP

#include <chrono>
#include <filesystem>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "dotdfs/bytes.hpp"
#include "dotdfs/client.hpp"
#include "dotdfs/dotsec.hpp"
#include "dotdfs/server.hpp"

// Test and measurement scaffolding: loopback fixtures, deterministic
// generators, fault injection, a fake clock for timeout paths, and the
// throughput recorder that feeds model CSVs.

namespace dotdfs::harness {

// Seeded deterministic entropy for reproducible handshakes and generators.
class DeterministicRng final : public dotsec::RandomSource {
public:
    explicit DeterministicRng(uint64_t seed) : rng_(seed) {}
    void fill(uint8_t* out, size_t n) override {
        for (size_t i = 0; i < n; ++i) out[i] = static_cast<uint8_t>(rng_());
    }

private:
    std::mt19937_64 rng_;
};

// Self-deleting scratch directory.
class TempDir {
public:
    explicit TempDir(const std::string& tag);
    ~TempDir();
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }
    std::filesystem::path operator/(const std::string& rel) const { return path_ / rel; }

private:
    std::filesystem::path path_;
};

// One shared 2048-bit test keypair; generation is expensive enough to reuse.
const dotsec::RsaKeyPair& test_keypair();

// Fake clock: WLM-style timeout checks consult an injected now() source.
class FakeClock {
public:
    std::chrono::steady_clock::time_point now() const {
        return epoch_ + offset_;
    }
    void advance(std::chrono::milliseconds d) { offset_ += d; }
    std::function<std::chrono::steady_clock::time_point()> fn() {
        return [this] { return now(); };
    }

private:
    std::chrono::steady_clock::time_point epoch_ = std::chrono::steady_clock::now();
    std::chrono::milliseconds offset_{0};
};

Bytes random_blob(uint64_t seed, size_t n);
void write_file(const std::filesystem::path& p, ByteView content);
Bytes read_file(const std::filesystem::path& p);
Bytes sha256_file(const std::filesystem::path& p);

// --- loopback server fixture -------------------------------------------------

struct FixtureOptions {
    uint64_t rng_seed = 1;
    std::string username = "tester";
    std::string password = "hunter2";
    std::string perms = "rw";
    std::chrono::milliseconds handshake_timeout{2000};
    std::chrono::milliseconds wlm_timeout{5000};
    size_t session_cap = 32;
};

class LoopbackServer {
public:
    explicit LoopbackServer(FixtureOptions opts = {});
    ~LoopbackServer();

    const std::filesystem::path& root() const { return root_.path(); }
    uint16_t port() const;
    server::Daemon& daemon() { return *daemon_; }
    client::Endpoint endpoint() const;
    dotsec::Credential credential() const { return {opts_.username, opts_.password}; }

private:
    FixtureOptions opts_;
    TempDir root_;
    TempDir etc_;
    std::unique_ptr<server::Daemon> daemon_;
};

// --- fault injection ----------------------------------------------------------

struct FaultPlan {
    enum class Action : uint8_t { None, Reset, Truncate, FlipBit, Delay };
    Action action = Action::None;
    size_t stream_index = 0; // which of the n streams
    size_t at_frame = 0;     // trigger before sending this frame ordinal
    size_t bit = 0;          // for FlipBit: bit offset within the frame bytes
    std::chrono::milliseconds delay{0};
};

// Installs a client-side send hook implementing the plan; returns the hook.
client::SendHook make_fault_hook(const FaultPlan& plan);

// --- tree generation (directory corpus shape) ---------------------------------

struct TreeSpec {
    size_t files = 1000;
    size_t dirs = 100;
    size_t min_size = 1024;
    size_t max_size = 512 * 1024; // log-uniform in [min,max]
    uint64_t seed = 42;
};

struct TreeManifestEntry {
    std::string rel_path;
    uint64_t size = 0;
    std::string sha256_hex;
};

struct TreeManifest {
    std::vector<std::string> dirs;
    std::vector<TreeManifestEntry> files;
    uint64_t total_bytes = 0;
};

TreeManifest gen_tree(const std::filesystem::path& root, const TreeSpec& spec);

// Recursively fingerprints a tree: (relative path, kind, size, checksum).
TreeManifest snapshot_tree(const std::filesystem::path& root);

// Empty when the trees are isomorphic; otherwise one line per difference.
std::vector<std::string> tree_diff(const std::filesystem::path& a,
                                   const std::filesystem::path& b);

// --- throughput recording -----------------------------------------------------

class ThroughputRecorder {
public:
    void record(double n, double window, double bytes_per_s);
    void write_csv(std::ostream& out) const; // model-compatible CSV

private:
    std::vector<std::array<double, 3>> rows_;
};

} // namespace dotdfs::harness

#endif
