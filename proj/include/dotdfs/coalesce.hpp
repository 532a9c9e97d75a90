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
#ifndef DOTDFS_COALESCE_HPP
#define DOTDFS_COALESCE_HPP

#include <cstdint>
#include <map>

#include "dotdfs/bytes.hpp"
#include "dotdfs/file.hpp"

namespace dotdfs::server {

// Frames arrive in arbitrary order across streams; buffering them in a 1 MiB
// window keeps file writes coherent and cuts the repositioned writes down to
// one per contiguous run.
inline constexpr size_t kCoalesceCapacity = 1 << 20;

class CoalescingWriter {
public:
    explicit CoalescingWriter(File& sink, size_t capacity = kCoalesceCapacity);

    // Records one frame's bytes at exactly `offset`. A frame outside the
    // current window (or larger than it) forces a flush first. Re-sending
    // identical bytes for a range is idempotent; conflicting bytes throw
    // Error(OverlapConflict).
    void add(uint64_t offset, ByteView data);

    // Flushes the tail; call once at end of session.
    void finish();

    struct Stats {
        uint64_t seeks = 0;   // repositioned writes issued
        uint64_t runs = 0;    // contiguous runs flushed (seeks <= runs)
        uint64_t flushes = 0; // window evictions
        uint64_t bytes = 0;   // payload bytes written through
        size_t capacity = 0;  // window buffer allocation
    };
    const Stats& stats() const { return stats_; }

private:
    void flush_window();
    void write_direct(uint64_t offset, ByteView data);
    void check_flushed_overlap(uint64_t offset, ByteView data);
    void note_written(uint64_t offset, uint64_t len);

    File& sink_;
    size_t capacity_;
    Bytes buffer_;
    bool window_active_ = false;
    uint64_t window_start_ = 0;
    std::map<uint64_t, uint64_t> window_runs_; // absolute offset -> length
    std::map<uint64_t, uint64_t> flushed_;     // ranges already on disk
    Stats stats_;
};

} // namespace dotdfs::server

#endif
