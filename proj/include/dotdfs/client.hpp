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
#ifndef DOTDFS_CLIENT_HPP
#define DOTDFS_CLIENT_HPP

#include <chrono>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dotdfs/channel.hpp"
#include "dotdfs/dotsec.hpp"
#include "dotdfs/wire.hpp"

// Client transfer engine: bulk upload/download over n parallel streams under
// one GUID session, fed by the read-ahead queue, plus the authenticated
// channel bootstrap the other modes reuse.

namespace dotdfs::client {

struct Endpoint {
    std::string host = "127.0.0.1";
    uint16_t port = 2799;
};

struct Security {
    dotsec::Credential credential;
    uint8_t sc_id = dotsec::kScAes256Cbc;
    uint8_t hash_id = dotsec::kHashSha256;
    // Bulk frames drop to the semi-secure plaintext channel unless set;
    // the handshake and control plane are always sealed.
    bool seal_bulk = false;
    dotsec::RandomSource* rng = nullptr;
};

struct TransferOptions {
    uint64_t streams = 1;                     // n parallel TCP streams
    uint64_t window = 4ull << 20;             // socket buffer hint (W)
    size_t block = 256 * 1024;                // frame payload size
    std::optional<std::pair<uint64_t, uint64_t>> range; // (offset, length)
    std::chrono::milliseconds connect_timeout{10000};
    size_t lfrq_capacity = 16;

    // Memory-to-memory mode: stream synthetic zeros / discard received
    // bytes; no file is touched on either side.
    bool synthetic = false;
    uint64_t synthetic_bytes = 0;
};

struct TransferReport {
    uint64_t bytes_moved = 0;
    double elapsed_s = 0;
    std::vector<uint64_t> per_stream_bytes;
    double throughput_bps = 0;
    uint64_t error_count = 0;
    uint64_t granted_window = 0;
};

// Fault-injection surface: called before each frame goes out; may mutate the
// encoded bytes, delay, or demand an abortive close.
struct SendDecision {
    enum class Act : uint8_t { Pass, ResetNow, TruncateThenReset };
    Act act = Act::Pass;
    size_t keep_bytes = 0; // for TruncateThenReset
};
using SendHook =
    std::function<SendDecision(size_t stream_index, size_t frame_ordinal, Bytes& frame)>;

TransferReport upload(const Endpoint& remote, const std::string& local_path,
                      const std::string& remote_path, const TransferOptions& opts,
                      const Security& sec, const SendHook& hook = {});

TransferReport download(const Endpoint& remote, const std::string& remote_path,
                        const std::string& local_path, const TransferOptions& opts,
                        const Security& sec);

// 16 random bytes from a cryptographic source.
wire::Guid random_guid(dotsec::RandomSource* rng = nullptr);

// Service byte, availability ack, DotSec handshake, mode selection; returns
// a sealed channel ready for mode traffic. PathM/DFSM/dirtree build on it.
dotsec::Channel open_mode_channel(const Endpoint& remote, wire::Mode mode, const Security& sec,
                                  std::chrono::milliseconds connect_timeout =
                                      std::chrono::milliseconds(10000));

} // namespace dotdfs::client

#endif
