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
#ifndef DOTDFS_WIRE_HPP
#define DOTDFS_WIRE_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>

#include "dotdfs/bytes.hpp"

// Binary wire layer. Every header of the protocol is defined here, byte
// exact; golden vectors live in docs/wire.md. All multi-byte integers are
// big-endian (network order).

namespace dotdfs::wire {

// Service selection byte, first byte on every connection.
inline constexpr uint8_t kServiceDotDfs = 0;
inline constexpr uint8_t kServiceRemoteProcess = 1; // recognized, not serviced
inline constexpr uint8_t kServiceThread = 2;        // recognized, not serviced

// Servicing modes selected after the security handshake.
enum class Mode : uint8_t { Ftsm = 1, PathM = 2, Dfsm = 3 };

// A data frame never carries more than this; bounds peer-driven allocation.
inline constexpr uint64_t kMaxFramePayload = 8ull << 20;

enum class DecodeStatus : uint8_t {
    Ok,
    TruncatedInput,     // stream shorter than the header demands
    NonMinimalEncoding, // malformed or adversarial peer
    ModeTooLarge,       // width byte > 8
    MalformedFrame,     // grammar violation (e.g. data frame with read_value 0)
    PayloadTooLarge,    // read_value over kMaxFramePayload
};

const char* decode_status_name(DecodeStatus s);

// --- VarUInt ----------------------------------------------------------
// (mode: one byte)(payload: exactly `mode` big-endian bytes), mode minimal:
// 0 iff value 0, else ceil(bitlen(value)/8).

size_t varuint_width(uint64_t value);          // mode byte value
size_t varuint_size(uint64_t value);           // total encoded bytes, 1 + width
void put_varuint(ByteWriter& w, uint64_t value);
Bytes encode_varuint(uint64_t value);

struct VarUIntResult {
    DecodeStatus status = DecodeStatus::Ok;
    uint64_t value = 0;
    size_t consumed = 0;
};

VarUIntResult decode_varuint(ByteView in);

// --- TransferFrame ----------------------------------------------------
// [L1:1][L2:1][SeekValue: L1 bytes][ReadValue: L2 bytes][payload: ReadValue].
// L1 = L2 = 0 is the end-of-transfer sentinel; a data frame has
// read_value >= 1 so the sentinel is unambiguous.

struct TransferFrame {
    uint64_t seek_value = 0;
    Bytes payload;

    bool operator==(const TransferFrame&) const = default;
};

inline constexpr std::array<uint8_t, 2> kEndOfTransfer = {0x00, 0x00};

size_t frame_header_size(uint64_t seek, uint64_t read_value);
// Writes only the header; the caller streams the payload behind it.
void put_frame_header(ByteWriter& w, uint64_t seek, uint64_t read_value);
Bytes encode_frame(const TransferFrame& f); // throws Error(PayloadMismatch) on empty payload

struct FrameDecodeResult {
    DecodeStatus status = DecodeStatus::Ok;
    bool end_of_transfer = false;
    TransferFrame frame;
    size_t consumed = 0;
};

FrameDecodeResult decode_frame(ByteView in);

// --- SessionParamsHeader (FTSM) ----------------------------------------
// [guid:16][n VarUInt][window VarUInt][direction:1]
// [path VarUInt length + UTF-8][offset VarUInt][length VarUInt]

using Guid = std::array<uint8_t, 16>;

enum class Direction : uint8_t { Upload = 0, Download = 1 };

struct SessionParams {
    Guid guid{};
    uint64_t streams = 1;     // n, >= 1
    uint64_t window = 0;      // TCP window bytes hint
    Direction direction = Direction::Upload;
    std::string path;         // non-empty, UTF-8, server-root relative
    uint64_t offset = 0;      // partial-transfer start
    uint64_t length = 0;      // partial-transfer span, 0 = to end of file

    bool operator==(const SessionParams&) const = default;
};

Bytes encode_session_params(const SessionParams& p); // validates invariants

struct SessionParamsDecodeResult {
    DecodeStatus status = DecodeStatus::Ok;
    SessionParams params;
    size_t consumed = 0;
};

SessionParamsDecodeResult decode_session_params(ByteView in);

std::string guid_hex(const Guid& g);

// --- DfsmMethodHeader ---------------------------------------------------
// [method:1][RW-Mode:1][RW-Length: RW-Mode bytes][payload: RW-Length bytes]

enum class DfsmMethod : uint8_t {
    ReadReply = 0,
    Read = 1,
    Write = 2,
    Seek = 3,
    Flush = 4,
    SetLength = 5,
    Lock = 6,
    Unlock = 7,
    Open = 8,
    Close = 9,
    Error = 10,
};

inline constexpr uint8_t kDfsmMethodMax = 10;

struct DfsmHeader {
    DfsmMethod method = DfsmMethod::Error;
    Bytes payload;

    bool operator==(const DfsmHeader&) const = default;
};

Bytes encode_dfsm_header(const DfsmHeader& h);

struct DfsmDecodeResult {
    DecodeStatus status = DecodeStatus::Ok;
    DfsmHeader header;
    size_t consumed = 0;
};

DfsmDecodeResult decode_dfsm_header(ByteView in);

// Length-prefixed UTF-8 string, the encoding every mode uses for paths.
void put_string(ByteWriter& w, std::string_view s);
bool get_string(ByteReader& r, std::string& out, uint64_t max_len = kMaxFramePayload);
bool get_varuint(ByteReader& r, uint64_t& out);

} // namespace dotdfs::wire

#endif
