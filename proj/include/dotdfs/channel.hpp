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
#ifndef DOTDFS_CHANNEL_HPP
#define DOTDFS_CHANNEL_HPP

#include <optional>

#include "dotdfs/dotsec.hpp"
#include "dotdfs/net.hpp"
#include "dotdfs/wire.hpp"

// One authenticated connection. Before the handshake the channel moves raw
// bytes; once TSI is installed every byte tunnels through SecuredDataHeader
// records, transparently re-chunked, until a zero/zero record drops the
// channel back to plaintext pass-through (semi-secure). A channel belongs to
// exactly one execution context at a time.

namespace dotdfs::dotsec {

class Channel {
public:
    explicit Channel(net::Socket sock) : sock_(std::move(sock)) {}

    void install_tsi(const CipherSuite& suite, const SessionKey& key);
    bool sealed() const { return sealed_; }

    void write(ByteView b);
    void write(const void* p, size_t n) {
        write(ByteView(static_cast<const uint8_t*>(p), n));
    }
    void flush();
    void write_msg(ByteView b) {
        write(b);
        flush();
    }

    void read_exact(void* p, size_t n);
    uint8_t read_u8();
    uint64_t read_varuint(uint64_t cap = wire::kMaxFramePayload);
    std::string read_string(uint64_t max_len = 64 * 1024);
    Bytes read_bytes(size_t n);

    // True when decrypted input is already buffered; readiness loops must
    // drain this before polling the socket.
    bool has_buffered() const { return inpos_ < inbuf_.size(); }

    // Semi-secure switch: flushes, emits the zero/zero record, then passes
    // bytes through unmodified. The reader flips automatically on seeing it.
    void switch_to_plaintext();

    // Re-arm TSI from plaintext mode at an agreed protocol point.
    void rearm_tsi();
    void expect_rearm();

    net::Socket& socket() { return sock_; }
    int fd() const { return sock_.fd(); }

private:
    void refill(); // reads one record, may flip to plaintext

    net::Socket sock_;
    std::optional<TsiCodec> tsi_;
    bool sealed_ = false;
    Bytes inbuf_;
    size_t inpos_ = 0;
    Bytes outbuf_;
};

// Post-service-selection security handshake, Figs. 13/14 sequence:
// RSAPublicHeader, SharedKeyHeader, one CSP accept byte, then credentials
// over TSI. Both sides end sealed.

struct SuitePolicy {
    // (sc_id, hash_id) pairs the server will acknowledge; empty = registry.
    std::vector<std::pair<uint8_t, uint8_t>> allowed;

    bool permits(uint8_t sc, uint8_t hash) const;
};

Principal server_side_handshake(Channel& ch, const RsaKeyPair& server_key,
                                const CredentialStore& creds, const SuitePolicy& policy);

void client_side_handshake(Channel& ch, const CipherSuite& suite, const Credential& cred,
                           RandomSource* rng = nullptr);

} // namespace dotdfs::dotsec

#endif
