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
#include <doctest.h>

#include <random>

#include "dotdfs/errors.hpp"
#include "dotdfs/wire.hpp"

using namespace dotdfs;
using namespace dotdfs::wire;

namespace {

// Independent oracle: minimal big-endian encoding built with plain division,
// no shared code with the implementation.
Bytes oracle_varuint(uint64_t v) {
    Bytes digits;
    uint64_t x = v;
    while (x > 0) {
        digits.push_back(static_cast<uint8_t>(x % 256));
        x /= 256;
    }
    Bytes out;
    out.push_back(static_cast<uint8_t>(digits.size()));
    for (auto it = digits.rbegin(); it != digits.rend(); ++it) out.push_back(*it);
    return out;
}

size_t oracle_bitlen(uint64_t v) {
    size_t n = 0;
    while (v > 0) {
        ++n;
        v >>= 1;
    }
    return n;
}

Bytes random_payload(std::mt19937_64& rng, size_t max_len) {
    // log-uniform sizes so large payloads appear without dominating runtime
    std::uniform_real_distribution<double> ud(0.0, 1.0);
    size_t len = 1 + static_cast<size_t>((max_len - 1) * ud(rng) * ud(rng));
    Bytes p(len);
    for (auto& b : p) b = static_cast<uint8_t>(rng());
    return p;
}

} // namespace

TEST_CASE("varuint frozen vectors") {
    CHECK(encode_varuint(0) == Bytes{0x00});
    CHECK(encode_varuint(255) == Bytes{0x01, 0xFF});
    CHECK(encode_varuint(300) == Bytes{0x02, 0x01, 0x2C});

    auto r0 = decode_varuint(Bytes{0x00});
    CHECK(r0.status == DecodeStatus::Ok);
    CHECK(r0.value == 0);
    CHECK(r0.consumed == 1);

    auto r300 = decode_varuint(Bytes{0x02, 0x01, 0x2C});
    CHECK(r300.status == DecodeStatus::Ok);
    CHECK(r300.value == 300);
    CHECK(r300.consumed == 3);
}

TEST_CASE("varuint exhaustive oracle below 2^20") {
    for (uint64_t v = 0; v < (1u << 20); ++v) {
        Bytes expect = oracle_varuint(v);
        Bytes got = encode_varuint(v);
        REQUIRE(got == expect);
        auto dec = decode_varuint(got);
        REQUIRE(dec.status == DecodeStatus::Ok);
        REQUIRE(dec.value == v);
        REQUIRE(dec.consumed == got.size());
    }
}

TEST_CASE("varuint minimality over random 64-bit values") {
    std::mt19937_64 rng(0xD07D
                        );
    for (int i = 0; i < 20000; ++i) {
        int bits = static_cast<int>(rng() % 64) + 1;
        uint64_t v = rng() >> (64 - bits);
        size_t expect = 1 + (v == 0 ? 0 : (oracle_bitlen(v) + 7) / 8);
        CHECK(encode_varuint(v).size() == expect);
    }
    CHECK(encode_varuint(~0ull).size() == 9);
}

TEST_CASE("varuint decode errors") {
    CHECK(decode_varuint(Bytes{}).status == DecodeStatus::TruncatedInput);
    CHECK(decode_varuint(Bytes{0x03, 0x01}).status == DecodeStatus::TruncatedInput);
    CHECK(decode_varuint(Bytes{0x02, 0x00, 0x05}).status == DecodeStatus::NonMinimalEncoding);
    CHECK(decode_varuint(Bytes{0x01, 0x00}).status == DecodeStatus::NonMinimalEncoding);
    CHECK(decode_varuint(Bytes{0x09, 1, 2, 3, 4, 5, 6, 7, 8, 9}).status ==
          DecodeStatus::ModeTooLarge);
    // trailing bytes beyond the encoding are not consumed
    auto r = decode_varuint(Bytes{0x01, 0x10, 0xEE, 0xEE});
    CHECK(r.status == DecodeStatus::Ok);
    CHECK(r.value == 0x10);
    CHECK(r.consumed == 2);
}

TEST_CASE("frame frozen vectors") {
    TransferFrame f{0, to_bytes("abc")};
    CHECK(encode_frame(f) == Bytes{0x00, 0x01, 0x03, 0x61, 0x62, 0x63});

    CHECK(Bytes(kEndOfTransfer.begin(), kEndOfTransfer.end()) == Bytes{0x00, 0x00});

    TransferFrame big{65536, Bytes(256, 0xAB)};
    Bytes enc = encode_frame(big);
    Bytes header(enc.begin(), enc.begin() + 7);
    CHECK(header == Bytes{0x03, 0x02, 0x01, 0x00, 0x00, 0x01, 0x00});
    CHECK(enc.size() == 7 + 256);
}

TEST_CASE("frame decode basics") {
    auto sentinel = decode_frame(Bytes{0x00, 0x00});
    CHECK(sentinel.status == DecodeStatus::Ok);
    CHECK(sentinel.end_of_transfer);
    CHECK(sentinel.consumed == 2);

    auto abc = decode_frame(Bytes{0x00, 0x01, 0x03, 0x61, 0x62, 0x63});
    CHECK(abc.status == DecodeStatus::Ok);
    CHECK_FALSE(abc.end_of_transfer);
    CHECK(abc.frame.seek_value == 0);
    CHECK(abc.frame.payload == to_bytes("abc"));

    // L1=1, L2=0 with nothing behind it: header demands one seek byte
    CHECK(decode_frame(Bytes{0x01, 0x00}).status == DecodeStatus::TruncatedInput);
    // ...and with the seek byte present it violates the data-frame contract
    CHECK(decode_frame(Bytes{0x01, 0x00, 0x07}).status == DecodeStatus::MalformedFrame);
    // empty write cannot masquerade as data
    CHECK(encode_varuint(0)[0] == 0x00); // sanity: zero encodes to width 0
    CHECK_THROWS_AS(encode_frame(TransferFrame{5, {}}), Error);
}

TEST_CASE("frame decode: all 2-byte prefixes classified against the grammar") {
    for (int a = 0; a < 256; ++a) {
        for (int b = 0; b < 256; ++b) {
            auto r = decode_frame(Bytes{static_cast<uint8_t>(a), static_cast<uint8_t>(b)});
            DecodeStatus expect;
            bool expect_end = false;
            if (a == 0 && b == 0) {
                expect = DecodeStatus::Ok;
                expect_end = true;
            } else if (a > 8 || b > 8) {
                expect = DecodeStatus::ModeTooLarge;
            } else if (a == 0 && b > 0) {
                expect = DecodeStatus::TruncatedInput; // read_value bytes missing
            } else {
                expect = DecodeStatus::TruncatedInput; // seek bytes missing
            }
            REQUIRE(r.status == expect);
            REQUIRE(r.end_of_transfer == expect_end);
        }
    }
}

TEST_CASE("frame random round-trip and re-split") {
    std::mt19937_64 rng(42);
    std::uniform_int_distribution<uint64_t> off(0, (1ull << 48) - 1);
    for (int i = 0; i < 2000; ++i) {
        TransferFrame f{off(rng), random_payload(rng, 64 * 1024)};
        Bytes enc = encode_frame(f);
        CHECK(enc.size() >= 3);
        // sentinel unambiguity
        bool looks_like_sentinel = enc[0] == 0x00 && enc[1] == 0x00;
        CHECK_FALSE(looks_like_sentinel);
        auto dec = decode_frame(enc);
        REQUIRE(dec.status == DecodeStatus::Ok);
        REQUIRE(dec.frame == f);
        REQUIRE(dec.consumed == enc.size());
    }

    // prefix freedom: a concatenated stream re-splits into the same frames
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<TransferFrame> frames;
        Bytes stream;
        int k = 1 + static_cast<int>(rng() % 8);
        for (int i = 0; i < k; ++i) {
            frames.push_back({off(rng), random_payload(rng, 4096)});
            Bytes enc = encode_frame(frames.back());
            stream.insert(stream.end(), enc.begin(), enc.end());
        }
        stream.insert(stream.end(), kEndOfTransfer.begin(), kEndOfTransfer.end());
        size_t pos = 0;
        for (int i = 0; i < k; ++i) {
            auto dec = decode_frame(ByteView(stream).subspan(pos));
            REQUIRE(dec.status == DecodeStatus::Ok);
            REQUIRE_FALSE(dec.end_of_transfer);
            REQUIRE(dec.frame == frames[i]);
            pos += dec.consumed;
        }
        auto end = decode_frame(ByteView(stream).subspan(pos));
        REQUIRE(end.end_of_transfer);
        REQUIRE(pos + 2 == stream.size());
    }
}

TEST_CASE("frame payload cap") {
    // read_value = 8 MiB + 1, minimally encoded in 3 bytes
    Bytes enc{0x00, 0x03, 0x80, 0x00, 0x01};
    CHECK(decode_frame(enc).status == DecodeStatus::PayloadTooLarge);
    CHECK_THROWS_AS(encode_frame(TransferFrame{0, Bytes(kMaxFramePayload + 1, 1)}), Error);
}

TEST_CASE("session params round-trip") {
    SessionParams p;
    for (size_t i = 0; i < 16; ++i) p.guid[i] = static_cast<uint8_t>(i * 7 + 1);
    p.streams = 4;
    p.window = 4 << 20;
    p.direction = Direction::Download;
    p.path = "data/large.bin";
    p.offset = 1024;
    p.length = 2048;

    Bytes enc = encode_session_params(p);
    auto dec = decode_session_params(enc);
    REQUIRE(dec.status == DecodeStatus::Ok);
    CHECK(dec.params == p);
    CHECK(dec.consumed == enc.size());

    SUBCASE("invariant violations rejected") {
        SessionParams bad = p;
        bad.streams = 0;
        CHECK_THROWS_AS(encode_session_params(bad), Error);
        bad = p;
        bad.path.clear();
        CHECK_THROWS_AS(encode_session_params(bad), Error);
        // truncated input
        Bytes cut(enc.begin(), enc.begin() + 10);
        CHECK(decode_session_params(cut).status == DecodeStatus::TruncatedInput);
    }
}

TEST_CASE("dfsm header round-trip") {
    DfsmHeader h{DfsmMethod::Read, to_bytes("\x01\x05payload")};
    Bytes enc = encode_dfsm_header(h);
    auto dec = decode_dfsm_header(enc);
    REQUIRE(dec.status == DecodeStatus::Ok);
    CHECK(dec.header == h);
    CHECK(dec.consumed == enc.size());

    // server replies to Read with method 0 in the method block
    DfsmHeader reply{DfsmMethod::ReadReply, Bytes(100, 0x55)};
    Bytes replyEnc = encode_dfsm_header(reply);
    CHECK(replyEnc[0] == 0x00);
    CHECK(decode_dfsm_header(replyEnc).header.method == DfsmMethod::ReadReply);

    CHECK(decode_dfsm_header(Bytes{}).status == DecodeStatus::TruncatedInput);
    CHECK(decode_dfsm_header(Bytes{0x0B, 0x00}).status == DecodeStatus::MalformedFrame);
    CHECK(decode_dfsm_header(Bytes{0x01, 0x01}).status == DecodeStatus::TruncatedInput);
    CHECK(decode_dfsm_header(Bytes{0x01, 0x02, 0x00, 0x01}).status ==
          DecodeStatus::NonMinimalEncoding);
}

TEST_CASE("hex helpers") {
    CHECK(hex(Bytes{0x00, 0xAB, 0x0F}) == "00ab0f");
    CHECK(from_hex("00ab0f") == Bytes{0x00, 0xAB, 0x0F});
    CHECK_THROWS_AS(from_hex("0g"), Error);
}
