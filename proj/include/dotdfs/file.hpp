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
#ifndef DOTDFS_FILE_HPP
#define DOTDFS_FILE_HPP

#include <atomic>
#include <cstdint>
#include <string>

#include "dotdfs/bytes.hpp"

namespace dotdfs {

// RAII fd with positional IO. Open/creation disposition follows the stream
// semantics the DFSM mode exposes.
class File {
public:
    enum class Disposition : uint8_t {
        CreateNew = 1,   // fails if the file exists
        Create = 2,      // create or truncate
        Open = 3,        // fails if missing
        OpenOrCreate = 4,
        Truncate = 5,    // existing file, length 0
        Append = 6,
    };

    File() = default;
    ~File();
    File(File&&) noexcept;
    File& operator=(File&&) noexcept;
    File(const File&) = delete;
    File& operator=(const File&) = delete;

    // throws Error(NotFound/AlreadyExists/PermissionDenied/IoError)
    static File open(const std::string& path, Disposition d, bool writable);

    bool valid() const { return fd_ >= 0; }
    int fd() const { return fd_; }

    size_t pread_some(void* buf, size_t n, uint64_t offset) const;
    void pread_exact(void* buf, size_t n, uint64_t offset) const;
    void pwrite_all(const void* buf, size_t n, uint64_t offset);
    uint64_t size() const;
    void set_length(uint64_t len);
    void sync();
    void lock_exclusive();  // whole-file advisory
    void unlock();
    void close();

    // Cumulative count of files opened through this wrapper; lets tests
    // verify that memory-only paths touch no storage.
    static std::atomic<uint64_t>& open_count();

private:
    int fd_ = -1;
};

} // namespace dotdfs

#endif
