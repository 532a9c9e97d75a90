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
#ifndef DOTDFS_NET_HPP
#define DOTDFS_NET_HPP

#include <atomic>
#include <chrono>
#include <cstdint>
#include <string>
#include <vector>

#include "dotdfs/bytes.hpp"

// Thin POSIX TCP layer. Blocking sockets; readiness comes from the
// Multiplexer, a portable poll()-backed stand-in for select()-style event
// dispatch (richer OS mechanisms can back the same interface).

namespace dotdfs::net {

// Process-wide count of live sockets; the channel-accounting tests watch it.
std::atomic<int>& open_socket_count();

class Socket {
public:
    Socket() = default;
    explicit Socket(int fd);
    ~Socket();

    Socket(Socket&& other) noexcept;
    Socket& operator=(Socket&& other) noexcept;
    Socket(const Socket&) = delete;
    Socket& operator=(const Socket&) = delete;

    bool valid() const { return fd_ >= 0; }
    int fd() const { return fd_; }

    // Throws Error(PeerReset) on EOF/reset, Error(HandshakeTimeout) when a
    // receive deadline set via set_recv_timeout expires.
    void send_all(const void* data, size_t n);
    void send_all(ByteView b) { send_all(b.data(), b.size()); }
    void recv_exact(void* data, size_t n);
    size_t recv_some(void* data, size_t n); // 0 = orderly EOF

    void set_recv_timeout(std::chrono::milliseconds ms); // 0 disables
    void set_buffer_sizes(uint64_t bytes);               // hint, 0 = leave alone
    uint64_t granted_recv_buffer() const;

    void shutdown_send();
    void close();

    std::string peer() const;

private:
    int fd_ = -1;
};

class Listener {
public:
    // port 0 binds an ephemeral port; check port() afterwards.
    explicit Listener(uint16_t port, const std::string& bind_addr = "0.0.0.0");
    ~Listener() { close(); }

    Listener(Listener&&) noexcept;
    Listener& operator=(Listener&&) = delete;

    Socket accept(); // throws Error(PeerReset) once closed
    uint16_t port() const { return port_; }
    void close();
    bool closed() const { return fd_ < 0; }

private:
    int fd_ = -1;
    uint16_t port_ = 0;
};

Socket connect_to(const std::string& host, uint16_t port,
                  std::chrono::milliseconds timeout = std::chrono::milliseconds(10000));

enum class Readiness : uint8_t { Read, Write };

// poll()-backed readiness multiplexer over a fixed stream set.
class Multiplexer {
public:
    void add(int fd, Readiness want);
    void remove(int fd);
    size_t size() const { return fds_.size(); }

    // Indices (into the order of add calls still present) of ready streams.
    // Blocks up to timeout; negative timeout blocks indefinitely.
    std::vector<int> wait(std::chrono::milliseconds timeout);

    const std::vector<int>& fds() const { return fds_; }

private:
    std::vector<int> fds_;
    std::vector<Readiness> wants_;
};

} // namespace dotdfs::net

#endif
