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
#ifndef DOTDFS_BYTES_HPP
#define DOTDFS_BYTES_HPP

#include <cstdint>
#include <cstring>
#include <span>
#include <string>
#include <vector>

namespace dotdfs {

using Bytes = std::vector<uint8_t>;
using ByteView = std::span<const uint8_t>;

inline Bytes to_bytes(std::string_view s) {
    return Bytes(s.begin(), s.end());
}

inline std::string to_string(ByteView b) {
    return std::string(reinterpret_cast<const char*>(b.data()), b.size());
}

// Appends big-endian, network order everywhere on the wire.
class ByteWriter {
public:
    explicit ByteWriter(Bytes& out) : out_(out) {}

    void u8(uint8_t v) { out_.push_back(v); }

    // Exactly `width` big-endian bytes of v; caller guarantees v fits.
    void be(uint64_t v, size_t width) {
        for (size_t i = 0; i < width; ++i)
            out_.push_back(static_cast<uint8_t>(v >> (8 * (width - 1 - i))));
    }

    void raw(ByteView b) { out_.insert(out_.end(), b.begin(), b.end()); }
    void raw(const void* p, size_t n) {
        const auto* u = static_cast<const uint8_t*>(p);
        out_.insert(out_.end(), u, u + n);
    }

    Bytes& buffer() { return out_; }

private:
    Bytes& out_;
};

class ByteReader {
public:
    explicit ByteReader(ByteView b) : data_(b) {}

    size_t remaining() const { return data_.size() - pos_; }
    size_t consumed() const { return pos_; }

    bool u8(uint8_t& v) {
        if (remaining() < 1) return false;
        v = data_[pos_++];
        return true;
    }

    bool be(uint64_t& v, size_t width) {
        if (remaining() < width) return false;
        v = 0;
        for (size_t i = 0; i < width; ++i) v = (v << 8) | data_[pos_ + i];
        pos_ += width;
        return true;
    }

    bool raw(void* dst, size_t n) {
        if (remaining() < n) return false;
        std::memcpy(dst, data_.data() + pos_, n);
        pos_ += n;
        return true;
    }

    ByteView view(size_t n) {
        // Caller checks remaining() first.
        auto v = data_.subspan(pos_, n);
        pos_ += n;
        return v;
    }

private:
    ByteView data_;
    size_t pos_ = 0;
};

std::string hex(ByteView b);
Bytes from_hex(std::string_view h);

} // namespace dotdfs

#endif
