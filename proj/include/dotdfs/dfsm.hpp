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
#ifndef DOTDFS_DFSM_HPP
#define DOTDFS_DFSM_HPP

#include <cstdint>
#include <string>

#include "dotdfs/channel.hpp"
#include "dotdfs/wire.hpp"

// Remote file-stream access with POSIX-like semantics. Each request carries
// the explicit file offset, so the protocol stays stateless even though the
// server caches open handles for speed; grammar in docs/dfsm.md.

namespace dotdfs::dfsm {

enum class OpenDisposition : uint8_t {
    CreateNew = 1,
    Create = 2,
    Open = 3,
    OpenOrCreate = 4,
    Truncate = 5,
    Append = 6,
};

enum class Access : uint8_t { Read = 1, Write = 2, ReadWrite = 3 };

// Which concurrent access other opens may retain while this one is alive.
enum class Share : uint8_t { None = 0, Read = 1, Write = 2, ReadWrite = 3 };

enum class Whence : uint8_t { Begin = 0, Current = 1, End = 2 };

// Error classes carried inside a method-10 reply.
enum class RemoteError : uint8_t {
    None = 0,
    NotFound = 1,
    AlreadyExists = 2,
    ShareViolation = 3,
    PathOutsideRoot = 4,
    HandleClosed = 5,
    InvalidOffset = 6,
    PermissionDenied = 7,
    IoError = 8,
    MalformedOp = 9,
};

// Client-tracked mirror of one server-side stream.
struct RemoteStream {
    uint64_t id = 0;
    uint64_t position = 0;
    Access access = Access::Read;
    bool open = false;
};

inline constexpr size_t kMaxIoChunk = 8 << 20; // single wire read/write cap

class DfsmClient {
public:
    explicit DfsmClient(dotsec::Channel ch);

    RemoteStream open(const std::string& path, OpenDisposition d, Access a,
                      Share share = Share::ReadWrite);

    // Returns up to `want` bytes at the stream position, empty exactly at
    // end-of-file. Requests above the wire cap are chunked.
    Bytes read(RemoteStream& s, size_t want);
    size_t write(RemoteStream& s, ByteView data);
    uint64_t seek(RemoteStream& s, int64_t offset, Whence whence);
    void flush(RemoteStream& s);
    void set_length(RemoteStream& s, uint64_t len);
    void lock(RemoteStream& s);
    void unlock(RemoteStream& s);
    void close(RemoteStream& s); // locally guarded; wire close is idempotent

    // Raw exchange for wire-level tests (e.g. double close).
    wire::DfsmHeader call_raw(const wire::DfsmHeader& request);

    dotsec::Channel& channel() { return ch_; }

private:
    wire::DfsmHeader call(wire::DfsmMethod m, ByteView payload);

    dotsec::Channel ch_;
};

// Server half: serves DFSM methods until disconnect. Handles are
// per-connection; share modes are enforced across the whole server through
// a process-wide open-file registry.
void serve_channel(dotsec::Channel& ch, const std::string& root,
                   const dotsec::Principal& who);

} // namespace dotdfs::dfsm

#endif
