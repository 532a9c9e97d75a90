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
#ifndef DOTDFS_LFRQ_HPP
#define DOTDFS_LFRQ_HPP

#include <condition_variable>
#include <deque>
#include <mutex>
#include <optional>
#include <thread>

#include "dotdfs/bytes.hpp"
#include "dotdfs/file.hpp"

namespace dotdfs::client {

// Local File Read Queue: one reader fills a bounded queue with sequential
// blocks; any number of consumers drain it, each block delivered exactly
// once, lowest offset first. One file handle total regardless of stream
// count.
class Lfrq {
public:
    struct Block {
        uint64_t offset = 0;
        Bytes data;
    };

    static constexpr size_t kDefaultCapacity = 16; // blocks of read-ahead

    // Reads [start, start + length) in block_size pieces. length 0 is an
    // immediately exhausted queue.
    Lfrq(File file, uint64_t start, uint64_t length, size_t block_size,
         size_t capacity = kDefaultCapacity);
    ~Lfrq();

    Lfrq(const Lfrq&) = delete;
    Lfrq& operator=(const Lfrq&) = delete;

    // Blocks until a block is available; nullopt once the range is drained.
    // Rethrows the reader's failure as Error(IoError).
    std::optional<Block> next();

    // Unblocks consumers and stops the reader; next() returns nullopt.
    void abort();

    size_t capacity() const { return capacity_; }

private:
    void reader_main(File file, uint64_t start, uint64_t length, size_t block_size);

    size_t capacity_;
    std::mutex mutex_;
    std::condition_variable not_empty_;
    std::condition_variable not_full_;
    std::deque<Block> queue_;
    bool done_ = false;
    bool aborted_ = false;
    std::exception_ptr error_;
    std::thread reader_;
};

} // namespace dotdfs::client

#endif
