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
#include "dotdfs/wire.hpp"

#include <bit>

#include "dotdfs/errors.hpp"

namespace dotdfs {

std::string hex(ByteView b) {
    static const char* digits = "0123456789abcdef";
    std::string out;
    out.reserve(b.size() * 2);
    for (uint8_t v : b) {
        out.push_back(digits[v >> 4]);
        out.push_back(digits[v & 0xF]);
    }
    return out;
}

Bytes from_hex(std::string_view h) {
    auto nib = [](char c) -> int {
        if (c >= '0' && c <= '9') return c - '0';
        if (c >= 'a' && c <= 'f') return c - 'a' + 10;
        if (c >= 'A' && c <= 'F') return c - 'A' + 10;
        return -1;
    };
    if (h.size() % 2 != 0) fail(Errc::MalformedOp, "odd hex length");
    Bytes out;
    out.reserve(h.size() / 2);
    for (size_t i = 0; i < h.size(); i += 2) {
        int hi = nib(h[i]), lo = nib(h[i + 1]);
        if (hi < 0 || lo < 0) fail(Errc::MalformedOp, "bad hex digit");
        out.push_back(static_cast<uint8_t>((hi << 4) | lo));
    }
    return out;
}

} // namespace dotdfs

namespace dotdfs::wire {

const char* decode_status_name(DecodeStatus s) {
    switch (s) {
        case DecodeStatus::Ok: return "Ok";
        case DecodeStatus::TruncatedInput: return "TruncatedInput";
        case DecodeStatus::NonMinimalEncoding: return "NonMinimalEncoding";
        case DecodeStatus::ModeTooLarge: return "ModeTooLarge";
        case DecodeStatus::MalformedFrame: return "MalformedFrame";
        case DecodeStatus::PayloadTooLarge: return "PayloadTooLarge";
    }
    return "?";
}

size_t varuint_width(uint64_t value) {
    if (value == 0) return 0;
    return (static_cast<size_t>(std::bit_width(value)) + 7) / 8;
}

size_t varuint_size(uint64_t value) { return 1 + varuint_width(value); }

void put_varuint(ByteWriter& w, uint64_t value) {
    size_t width = varuint_width(value);
    w.u8(static_cast<uint8_t>(width));
    w.be(value, width);
}

Bytes encode_varuint(uint64_t value) {
    Bytes out;
    ByteWriter w(out);
    put_varuint(w, value);
    return out;
}

VarUIntResult decode_varuint(ByteView in) {
    if (in.empty()) return {DecodeStatus::TruncatedInput, 0, 0};
    uint8_t mode = in[0];
    if (mode > 8) return {DecodeStatus::ModeTooLarge, 0, 0};
    if (mode == 0) return {DecodeStatus::Ok, 0, 1};
    if (in.size() < 1u + mode) return {DecodeStatus::TruncatedInput, 0, 0};
    // A leading zero payload byte always means a shorter mode existed.
    if (in[1] == 0x00) return {DecodeStatus::NonMinimalEncoding, 0, 0};
    uint64_t v = 0;
    for (size_t i = 0; i < mode; ++i) v = (v << 8) | in[1 + i];
    return {DecodeStatus::Ok, v, 1u + mode};
}

size_t frame_header_size(uint64_t seek, uint64_t read_value) {
    return 2 + varuint_width(seek) + varuint_width(read_value);
}

void put_frame_header(ByteWriter& w, uint64_t seek, uint64_t read_value) {
    size_t l1 = varuint_width(seek);
    size_t l2 = varuint_width(read_value);
    w.u8(static_cast<uint8_t>(l1));
    w.u8(static_cast<uint8_t>(l2));
    w.be(seek, l1);
    w.be(read_value, l2);
}

Bytes encode_frame(const TransferFrame& f) {
    if (f.payload.empty())
        fail(Errc::PayloadMismatch, "data frame requires read_value >= 1");
    if (f.payload.size() > kMaxFramePayload)
        fail(Errc::PayloadTooLarge, "frame payload over 8 MiB cap");
    Bytes out;
    out.reserve(frame_header_size(f.seek_value, f.payload.size()) + f.payload.size());
    ByteWriter w(out);
    put_frame_header(w, f.seek_value, f.payload.size());
    w.raw(f.payload);
    return out;
}

FrameDecodeResult decode_frame(ByteView in) {
    FrameDecodeResult r;
    if (in.size() < 2) {
        r.status = DecodeStatus::TruncatedInput;
        return r;
    }
    uint8_t l1 = in[0], l2 = in[1];
    if (l1 == 0 && l2 == 0) {
        r.end_of_transfer = true;
        r.consumed = 2;
        return r;
    }
    if (l1 > 8 || l2 > 8) {
        r.status = DecodeStatus::ModeTooLarge;
        return r;
    }
    size_t need = 2u + l1 + l2;
    if (in.size() < need) {
        r.status = DecodeStatus::TruncatedInput;
        return r;
    }
    // Both fields are canonical VarUInt payloads with their mode bytes
    // hoisted to the front of the frame.
    if (l1 > 0 && in[2] == 0x00) {
        r.status = DecodeStatus::NonMinimalEncoding;
        return r;
    }
    if (l2 > 0 && in[2 + l1] == 0x00) {
        r.status = DecodeStatus::NonMinimalEncoding;
        return r;
    }
    uint64_t seek = 0, len = 0;
    for (size_t i = 0; i < l1; ++i) seek = (seek << 8) | in[2 + i];
    for (size_t i = 0; i < l2; ++i) len = (len << 8) | in[2 + l1 + i];
    if (len == 0) {
        // L2 = 0 with L1 != 0: a data frame may not carry read_value 0.
        r.status = DecodeStatus::MalformedFrame;
        return r;
    }
    if (len > kMaxFramePayload) {
        r.status = DecodeStatus::PayloadTooLarge;
        return r;
    }
    if (in.size() < need + len) {
        r.status = DecodeStatus::TruncatedInput;
        return r;
    }
    r.frame.seek_value = seek;
    r.frame.payload.assign(in.begin() + need, in.begin() + need + len);
    r.consumed = need + len;
    return r;
}

void put_string(ByteWriter& w, std::string_view s) {
    put_varuint(w, s.size());
    w.raw(s.data(), s.size());
}

bool get_varuint(ByteReader& r, uint64_t& out) {
    uint8_t mode = 0;
    if (!r.u8(mode)) return false;
    if (mode > 8) return false;
    if (mode == 0) {
        out = 0;
        return true;
    }
    if (r.remaining() < mode) return false;
    uint64_t v = 0;
    if (!r.be(v, mode)) return false;
    if (v >> (8 * (mode - 1)) == 0) return false; // non-minimal
    out = v;
    return true;
}

bool get_string(ByteReader& r, std::string& out, uint64_t max_len) {
    uint64_t len = 0;
    if (!get_varuint(r, len)) return false;
    if (len > max_len || r.remaining() < len) return false;
    auto v = r.view(len);
    out.assign(reinterpret_cast<const char*>(v.data()), v.size());
    return true;
}

Bytes encode_session_params(const SessionParams& p) {
    if (p.streams < 1) fail(Errc::MalformedOp, "stream count must be >= 1");
    if (p.path.empty()) fail(Errc::MalformedOp, "path must be non-empty");
    Bytes out;
    ByteWriter w(out);
    w.raw(p.guid.data(), p.guid.size());
    put_varuint(w, p.streams);
    put_varuint(w, p.window);
    w.u8(static_cast<uint8_t>(p.direction));
    put_string(w, p.path);
    put_varuint(w, p.offset);
    put_varuint(w, p.length);
    return out;
}

SessionParamsDecodeResult decode_session_params(ByteView in) {
    SessionParamsDecodeResult r;
    ByteReader br(in);
    auto bad = [&](DecodeStatus s) {
        r.status = s;
        return r;
    };
    if (!br.raw(r.params.guid.data(), r.params.guid.size()))
        return bad(DecodeStatus::TruncatedInput);
    uint8_t dir = 0;
    if (!get_varuint(br, r.params.streams)) return bad(DecodeStatus::MalformedFrame);
    if (!get_varuint(br, r.params.window)) return bad(DecodeStatus::MalformedFrame);
    if (!br.u8(dir)) return bad(DecodeStatus::TruncatedInput);
    if (dir > 1) return bad(DecodeStatus::MalformedFrame);
    r.params.direction = static_cast<Direction>(dir);
    if (!get_string(br, r.params.path)) return bad(DecodeStatus::MalformedFrame);
    if (!get_varuint(br, r.params.offset)) return bad(DecodeStatus::MalformedFrame);
    if (!get_varuint(br, r.params.length)) return bad(DecodeStatus::MalformedFrame);
    if (r.params.streams < 1 || r.params.path.empty())
        return bad(DecodeStatus::MalformedFrame);
    r.consumed = br.consumed();
    return r;
}

std::string guid_hex(const Guid& g) { return hex(ByteView(g.data(), g.size())); }

Bytes encode_dfsm_header(const DfsmHeader& h) {
    if (static_cast<uint8_t>(h.method) > kDfsmMethodMax)
        fail(Errc::MalformedOp, "unknown DFSM method opcode");
    if (h.payload.size() > kMaxFramePayload)
        fail(Errc::PayloadTooLarge, "DFSM payload over 8 MiB cap");
    Bytes out;
    out.reserve(1 + varuint_size(h.payload.size()) + h.payload.size());
    ByteWriter w(out);
    w.u8(static_cast<uint8_t>(h.method));
    put_varuint(w, h.payload.size());
    w.raw(h.payload);
    return out;
}

DfsmDecodeResult decode_dfsm_header(ByteView in) {
    DfsmDecodeResult r;
    if (in.empty()) {
        r.status = DecodeStatus::TruncatedInput;
        return r;
    }
    uint8_t method = in[0];
    if (method > kDfsmMethodMax) {
        r.status = DecodeStatus::MalformedFrame;
        return r;
    }
    auto len = decode_varuint(in.subspan(1));
    if (len.status != DecodeStatus::Ok) {
        r.status = len.status;
        return r;
    }
    if (len.value > kMaxFramePayload) {
        r.status = DecodeStatus::PayloadTooLarge;
        return r;
    }
    size_t need = 1 + len.consumed + len.value;
    if (in.size() < need) {
        r.status = DecodeStatus::TruncatedInput;
        return r;
    }
    r.header.method = static_cast<DfsmMethod>(method);
    r.header.payload.assign(in.begin() + 1 + len.consumed, in.begin() + need);
    r.consumed = need;
    return r;
}

} // namespace dotdfs::wire
