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
#ifndef DOTDFS_PATHM_HPP
#define DOTDFS_PATHM_HPP

#include <span>
#include <string>
#include <vector>

#include "dotdfs/channel.hpp"

// RPC-style remote path operations over a reusable authenticated channel.
// Requests are [opcode:1][arg: VarUInt length + bytes]...; every request
// yields exactly one [status:1][payload] reply, in order. Grammar details
// and the opcode table live in docs/pathm.md.

namespace dotdfs::pathm {

enum class Op : uint8_t {
    CloseSession = 0,
    CreateDirectory = 1,
    DeleteDirectory = 2,
    DeleteFile = 3,
    Exists = 4,
    GetSize = 5,
    ListDirectory = 6,
    Rename = 7,
    UploadSmallFile = 8,
    DownloadSmallFile = 9,
    Checksum = 10,
};

enum class Status : uint8_t {
    Ok = 0,
    NotFound = 1,
    AlreadyExists = 2,
    PermissionDenied = 3,
    PathOutsideRoot = 4,
    MalformedOp = 5,
    TooLarge = 6,
    IoError = 7,
    DiskFull = 8,
};

inline constexpr uint64_t kDefaultSmallFileThreshold = 1 << 20;

struct DirEntry {
    std::string name;
    bool is_dir = false;
    uint64_t size = 0;

    bool operator==(const DirEntry&) const = default;
};

struct Reply {
    Status status = Status::Ok;
    Bytes payload;
    std::string error; // decoded message for non-Ok replies
};

// Raw request/reply plumbing; the tests pipeline with these directly.
Bytes encode_request(Op op, std::span<const Bytes> args);
void write_request(dotsec::Channel& ch, Op op, std::span<const Bytes> args);
Reply read_reply(dotsec::Channel& ch);

// Throws the Error matching a non-Ok status.
void throw_on_error(const Reply& reply);

class PathClient {
public:
    explicit PathClient(dotsec::Channel ch,
                        uint64_t small_file_threshold = kDefaultSmallFileThreshold);
    ~PathClient();

    void mkdir(const std::string& path);
    void rmdir(const std::string& path);
    void remove_file(const std::string& path);
    bool exists(const std::string& path);
    uint64_t size_of(const std::string& path);
    std::vector<DirEntry> list(const std::string& path);
    void rename(const std::string& from, const std::string& to);

    // TooLarge is raised before any bytes travel.
    void upload_small_file(const std::string& local_path, const std::string& remote_path);
    void upload_small_bytes(ByteView content, const std::string& remote_path);
    Bytes download_small_file(const std::string& remote_path);
    void download_small_to(const std::string& remote_path, const std::string& local_path);

    Bytes checksum(const std::string& path); // SHA-256 of remote file

    void close_session(); // polite end; channel unusable afterwards

    dotsec::Channel& channel() { return ch_; }
    uint64_t small_file_threshold() const { return threshold_; }

private:
    Reply call(Op op, std::span<const Bytes> args);

    dotsec::Channel ch_;
    uint64_t threshold_;
    bool closed_ = false;
};

// Server half: serves ops until CloseSession or disconnect, every path
// confined under root. Write ops require the principal's write permission.
void serve_channel(dotsec::Channel& ch, const std::string& root,
                   const dotsec::Principal& who, uint64_t small_file_threshold);

// Canonicalizes root/rel and verifies the result stays inside root.
// Throws Error(PathOutsideRoot). Exposed for confinement fuzz tests.
std::string confine_path(const std::string& root, const std::string& rel);

} // namespace dotdfs::pathm

#endif
