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
#include "dotdfs/net.hpp"

#include <arpa/inet.h>
#include <cerrno>
#include <cstring>
#include <fcntl.h>
#include <netdb.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include "dotdfs/errors.hpp"

namespace dotdfs::net {

std::atomic<int>& open_socket_count() {
    static std::atomic<int> count{0};
    return count;
}

namespace {

[[noreturn]] void fail_errno(Errc code, const char* what) {
    fail(code, std::string(what) + ": " + std::strerror(errno));
}

} // namespace

Socket::Socket(int fd) : fd_(fd) {
    if (fd_ >= 0) open_socket_count().fetch_add(1);
}

Socket::~Socket() { close(); }

Socket::Socket(Socket&& other) noexcept : fd_(other.fd_) { other.fd_ = -1; }

Socket& Socket::operator=(Socket&& other) noexcept {
    if (this != &other) {
        close();
        fd_ = other.fd_;
        other.fd_ = -1;
    }
    return *this;
}

void Socket::close() {
    if (fd_ >= 0) {
        ::close(fd_);
        fd_ = -1;
        open_socket_count().fetch_sub(1);
    }
}

void Socket::send_all(const void* data, size_t n) {
    const auto* p = static_cast<const uint8_t*>(data);
    while (n > 0) {
        ssize_t w = ::send(fd_, p, n, MSG_NOSIGNAL);
        if (w < 0) {
            if (errno == EINTR) continue;
            fail_errno(Errc::PeerReset, "send");
        }
        p += w;
        n -= static_cast<size_t>(w);
    }
}

void Socket::recv_exact(void* data, size_t n) {
    auto* p = static_cast<uint8_t*>(data);
    while (n > 0) {
        ssize_t r = ::recv(fd_, p, n, 0);
        if (r == 0) fail(Errc::PeerReset, "connection closed mid-message");
        if (r < 0) {
            if (errno == EINTR) continue;
            if (errno == EAGAIN || errno == EWOULDBLOCK)
                fail(Errc::HandshakeTimeout, "peer silent past the receive deadline");
            fail_errno(Errc::PeerReset, "recv");
        }
        p += r;
        n -= static_cast<size_t>(r);
    }
}

size_t Socket::recv_some(void* data, size_t n) {
    for (;;) {
        ssize_t r = ::recv(fd_, data, n, 0);
        if (r >= 0) return static_cast<size_t>(r);
        if (errno == EINTR) continue;
        if (errno == EAGAIN || errno == EWOULDBLOCK)
            fail(Errc::HandshakeTimeout, "peer silent past the receive deadline");
        fail_errno(Errc::PeerReset, "recv");
    }
}

void Socket::set_recv_timeout(std::chrono::milliseconds ms) {
    timeval tv{};
    tv.tv_sec = ms.count() / 1000;
    tv.tv_usec = (ms.count() % 1000) * 1000;
    ::setsockopt(fd_, SOL_SOCKET, SO_RCVTIMEO, &tv, sizeof tv);
}

void Socket::set_buffer_sizes(uint64_t bytes) {
    if (bytes == 0) return;
    int v = bytes > static_cast<uint64_t>(INT32_MAX) ? INT32_MAX : static_cast<int>(bytes);
    ::setsockopt(fd_, SOL_SOCKET, SO_SNDBUF, &v, sizeof v);
    ::setsockopt(fd_, SOL_SOCKET, SO_RCVBUF, &v, sizeof v);
}

uint64_t Socket::granted_recv_buffer() const {
    int v = 0;
    socklen_t len = sizeof v;
    ::getsockopt(fd_, SOL_SOCKET, SO_RCVBUF, &v, &len);
    return static_cast<uint64_t>(v);
}

void Socket::shutdown_send() { ::shutdown(fd_, SHUT_WR); }

std::string Socket::peer() const {
    sockaddr_in addr{};
    socklen_t len = sizeof addr;
    if (::getpeername(fd_, reinterpret_cast<sockaddr*>(&addr), &len) != 0) return "?";
    char buf[INET_ADDRSTRLEN];
    inet_ntop(AF_INET, &addr.sin_addr, buf, sizeof buf);
    return std::string(buf) + ":" + std::to_string(ntohs(addr.sin_port));
}

Listener::Listener(uint16_t port, const std::string& bind_addr) {
    fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
    if (fd_ < 0) fail_errno(Errc::BindFailed, "socket");
    int one = 1;
    ::setsockopt(fd_, SOL_SOCKET, SO_REUSEADDR, &one, sizeof one);
    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_port = htons(port);
    if (inet_pton(AF_INET, bind_addr.c_str(), &addr.sin_addr) != 1) {
        ::close(fd_);
        fd_ = -1;
        fail(Errc::BindFailed, "bad bind address " + bind_addr);
    }
    if (::bind(fd_, reinterpret_cast<sockaddr*>(&addr), sizeof addr) != 0 ||
        ::listen(fd_, 128) != 0) {
        int saved = errno;
        ::close(fd_);
        fd_ = -1;
        fail(Errc::BindFailed, std::string("bind/listen: ") + std::strerror(saved));
    }
    socklen_t len = sizeof addr;
    ::getsockname(fd_, reinterpret_cast<sockaddr*>(&addr), &len);
    port_ = ntohs(addr.sin_port);
}

Listener::Listener(Listener&& other) noexcept : fd_(other.fd_), port_(other.port_) {
    other.fd_ = -1;
}

void Listener::close() {
    if (fd_ >= 0) {
        // shutdown wakes a blocked accept on most platforms; close ends it
        ::shutdown(fd_, SHUT_RDWR);
        ::close(fd_);
        fd_ = -1;
    }
}

Socket Listener::accept() {
    for (;;) {
        int fd = ::accept(fd_, nullptr, nullptr);
        if (fd >= 0) {
            int one = 1;
            ::setsockopt(fd, IPPROTO_TCP, TCP_NODELAY, &one, sizeof one);
            return Socket(fd);
        }
        if (errno == EINTR) continue;
        fail(Errc::PeerReset, "listener closed");
    }
}

Socket connect_to(const std::string& host, uint16_t port, std::chrono::milliseconds timeout) {
    addrinfo hints{};
    hints.ai_family = AF_INET;
    hints.ai_socktype = SOCK_STREAM;
    addrinfo* res = nullptr;
    if (getaddrinfo(host.c_str(), std::to_string(port).c_str(), &hints, &res) != 0)
        fail(Errc::ConnectFailed, "cannot resolve " + host);

    int fd = -1;
    int saved = 0;
    for (addrinfo* ai = res; ai; ai = ai->ai_next) {
        fd = ::socket(ai->ai_family, ai->ai_socktype, ai->ai_protocol);
        if (fd < 0) continue;
        // connect with a deadline: nonblocking connect + poll
        int flags = fcntl(fd, F_GETFL, 0);
        fcntl(fd, F_SETFL, flags | O_NONBLOCK);
        int rc = ::connect(fd, ai->ai_addr, ai->ai_addrlen);
        if (rc != 0 && errno == EINPROGRESS) {
            pollfd pfd{fd, POLLOUT, 0};
            rc = ::poll(&pfd, 1, static_cast<int>(timeout.count()));
            if (rc == 1) {
                int err = 0;
                socklen_t len = sizeof err;
                getsockopt(fd, SOL_SOCKET, SO_ERROR, &err, &len);
                rc = err == 0 ? 0 : -1;
                errno = err;
            } else {
                rc = -1;
                errno = ETIMEDOUT;
            }
        }
        if (rc == 0) {
            fcntl(fd, F_SETFL, flags);
            int one = 1;
            ::setsockopt(fd, IPPROTO_TCP, TCP_NODELAY, &one, sizeof one);
            break;
        }
        saved = errno;
        ::close(fd);
        fd = -1;
    }
    freeaddrinfo(res);
    if (fd < 0)
        fail(Errc::ConnectFailed,
             host + ":" + std::to_string(port) + ": " + std::strerror(saved));
    return Socket(fd);
}

void Multiplexer::add(int fd, Readiness want) {
    fds_.push_back(fd);
    wants_.push_back(want);
}

void Multiplexer::remove(int fd) {
    for (size_t i = 0; i < fds_.size(); ++i) {
        if (fds_[i] == fd) {
            fds_.erase(fds_.begin() + i);
            wants_.erase(wants_.begin() + i);
            return;
        }
    }
}

std::vector<int> Multiplexer::wait(std::chrono::milliseconds timeout) {
    std::vector<pollfd> pfds(fds_.size());
    for (size_t i = 0; i < fds_.size(); ++i) {
        pfds[i].fd = fds_[i];
        pfds[i].events = wants_[i] == Readiness::Read ? POLLIN : POLLOUT;
    }
    int rc;
    do {
        rc = ::poll(pfds.data(), pfds.size(), static_cast<int>(timeout.count()));
    } while (rc < 0 && errno == EINTR);
    if (rc < 0) fail(Errc::IoError, std::string("poll: ") + std::strerror(errno));

    std::vector<int> ready;
    for (size_t i = 0; i < pfds.size(); ++i)
        if (pfds[i].revents != 0) ready.push_back(fds_[i]);
    return ready;
}

} // namespace dotdfs::net
