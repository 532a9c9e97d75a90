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
#include "dotdfs/channel.hpp"

#include <cstring>

#include "dotdfs/errors.hpp"

namespace dotdfs::dotsec {

namespace {
// Sealed writes re-chunk into records of at most this much plaintext.
constexpr size_t kMaxRecordPlaintext = 256 * 1024;
} // namespace

void Channel::install_tsi(const CipherSuite& suite, const SessionKey& key) {
    if (!outbuf_.empty()) flush();
    tsi_.emplace(suite, key);
    sealed_ = true;
}

void Channel::write(ByteView b) {
    if (!sealed_) {
        sock_.send_all(b);
        return;
    }
    outbuf_.insert(outbuf_.end(), b.begin(), b.end());
    if (outbuf_.size() >= kMaxRecordPlaintext) flush();
}

void Channel::flush() {
    if (!sealed_ || outbuf_.empty()) return;
    size_t pos = 0;
    while (pos < outbuf_.size()) {
        size_t n = std::min(kMaxRecordPlaintext, outbuf_.size() - pos);
        Bytes record = tsi_->seal(ByteView(outbuf_.data() + pos, n));
        sock_.send_all(record);
        pos += n;
    }
    outbuf_.clear();
}

void Channel::refill() {
    // one SecuredDataHeader, field by field off the socket
    uint8_t modes[2];
    sock_.recv_exact(modes, 2);
    if (modes[0] == 0 && modes[1] == 0) {
        sealed_ = false; // semi-secure from here on
        return;
    }
    uint8_t lenmode = 0;
    sock_.recv_exact(&lenmode, 1);
    Bytes record{modes[0], modes[1], lenmode};
    if (lenmode > 8) fail(Errc::MalformedFrame, "record length mode too large");
    size_t before = record.size();
    record.resize(before + lenmode);
    sock_.recv_exact(record.data() + before, lenmode);
    auto clen = wire::decode_varuint(ByteView(record).subspan(2));
    if (clen.status != wire::DecodeStatus::Ok)
        fail(Errc::MalformedFrame, "bad record length");
    if (clen.value > (16ull << 20)) fail(Errc::MalformedFrame, "record too large");
    before = record.size();
    record.resize(before + tsi_->suite().digest_len + clen.value);
    sock_.recv_exact(record.data() + before, tsi_->suite().digest_len + clen.value);

    auto opened = tsi_->open(record);
    inbuf_ = std::move(opened.plaintext);
    inpos_ = 0;
}

void Channel::read_exact(void* p, size_t n) {
    auto* dst = static_cast<uint8_t*>(p);
    while (n > 0) {
        if (!sealed_) {
            // hand any record remainder over first, then go direct
            if (inpos_ < inbuf_.size()) {
                size_t take = std::min(n, inbuf_.size() - inpos_);
                std::memcpy(dst, inbuf_.data() + inpos_, take);
                inpos_ += take;
                dst += take;
                n -= take;
                continue;
            }
            sock_.recv_exact(dst, n);
            return;
        }
        if (inpos_ == inbuf_.size()) {
            refill();
            continue; // refill may have flipped to plaintext
        }
        size_t take = std::min(n, inbuf_.size() - inpos_);
        std::memcpy(dst, inbuf_.data() + inpos_, take);
        inpos_ += take;
        dst += take;
        n -= take;
    }
}

uint8_t Channel::read_u8() {
    uint8_t v = 0;
    read_exact(&v, 1);
    return v;
}

uint64_t Channel::read_varuint(uint64_t cap) {
    uint8_t mode = read_u8();
    if (mode > 8) fail(Errc::ModeTooLarge, "varuint width over 8");
    if (mode == 0) return 0;
    uint8_t buf[8];
    read_exact(buf, mode);
    if (buf[0] == 0) fail(Errc::NonMinimalEncoding, "leading zero payload byte");
    uint64_t v = 0;
    for (size_t i = 0; i < mode; ++i) v = (v << 8) | buf[i];
    if (v > cap) fail(Errc::PayloadTooLarge, "value over cap");
    return v;
}

std::string Channel::read_string(uint64_t max_len) {
    uint64_t len = read_varuint(max_len);
    std::string s(len, '\0');
    read_exact(s.data(), len);
    return s;
}

Bytes Channel::read_bytes(size_t n) {
    Bytes b(n);
    read_exact(b.data(), n);
    return b;
}

void Channel::switch_to_plaintext() {
    if (!sealed_) return;
    flush();
    sock_.send_all(ByteView(kSwitchToPlaintext.data(), 2));
    sealed_ = false;
}

void Channel::rearm_tsi() {
    if (sealed_) return;
    if (!tsi_) fail(Errc::Internal, "no TSI state to re-arm");
    sock_.send_all(ByteView(kRearmTsi.data(), 2));
    sealed_ = true;
}

void Channel::expect_rearm() {
    if (sealed_) return;
    if (!tsi_) fail(Errc::Internal, "no TSI state to re-arm");
    uint8_t esc[2];
    read_exact(esc, 2);
    if (esc[0] != kRearmTsi[0] || esc[1] != kRearmTsi[1])
        fail(Errc::MalformedFrame, "expected TSI re-arm escape");
    sealed_ = true;
}

// --- handshake ---------------------------------------------------------------

bool SuitePolicy::permits(uint8_t sc, uint8_t hash) const {
    if (allowed.empty()) return true;
    for (auto [s, h] : allowed)
        if (s == sc && h == hash) return true;
    return false;
}

namespace {

constexpr uint8_t kCspAccept = 0;
constexpr uint8_t kCspReject = 1;
constexpr uint8_t kAuthOk = 0;
constexpr uint8_t kAuthBad = 1;

} // namespace

Principal server_side_handshake(Channel& ch, const RsaKeyPair& server_key,
                                const CredentialStore& creds, const SuitePolicy& policy) {
    ch.write_msg(encode_rsa_public_header(server_key));

    // SharedKeyHeader, reassembled field by field
    Bytes skh;
    skh.push_back(ch.read_u8()); // crypto
    skh.push_back(ch.read_u8()); // hash_alg
    uint64_t blen = ch.read_varuint(8192);
    {
        ByteWriter w(skh);
        wire::put_varuint(w, blen);
        Bytes blob = ch.read_bytes(blen);
        w.raw(blob);
    }

    uint8_t sc = skh[0], ha = skh[1];
    if (!policy.permits(sc, ha)) {
        uint8_t reject = kCspReject;
        ch.write_msg(ByteView(&reject, 1));
        fail(Errc::UnsupportedSuite, "client proposed a suite outside policy");
    }
    VerifiedKey vk;
    try {
        vk = server_verify(skh, server_key);
    } catch (const Error&) {
        uint8_t reject = kCspReject;
        ch.write_msg(ByteView(&reject, 1));
        throw;
    }
    uint8_t accept = kCspAccept;
    ch.write_msg(ByteView(&accept, 1));
    ch.install_tsi(vk.suite, vk.session_key);

    // credentials travel only sealed
    Credential cred;
    cred.username = ch.read_string(4096);
    cred.password = ch.read_string(4096);
    try {
        Principal p = creds.authenticate(cred);
        uint8_t ok = kAuthOk;
        ch.write_msg(ByteView(&ok, 1));
        return p;
    } catch (const Error&) {
        uint8_t bad = kAuthBad;
        ch.write_msg(ByteView(&bad, 1));
        throw;
    }
}

void client_side_handshake(Channel& ch, const CipherSuite& suite, const Credential& cred,
                           RandomSource* rng) {
    // RSAPublicHeader arrives just after service selection
    Bytes pub;
    {
        ByteWriter w(pub);
        uint64_t nlen = ch.read_varuint(8192);
        wire::put_varuint(w, nlen);
        w.raw(ch.read_bytes(nlen));
        uint64_t elen = ch.read_varuint(64);
        wire::put_varuint(w, elen);
        w.raw(ch.read_bytes(elen));
    }
    RsaPublicHeader header = parse_rsa_public_header(pub);

    KeyExchange kx = client_key_exchange(header, suite, rng);
    ch.write_msg(kx.header);

    uint8_t csp = ch.read_u8();
    if (csp != kCspAccept) fail(Errc::UnsupportedSuite, "server rejected the proposed suite");
    ch.install_tsi(lookup_suite(suite.sc_id, suite.hash_id), kx.session_key);

    Bytes msg;
    ByteWriter w(msg);
    wire::put_string(w, cred.username);
    wire::put_string(w, cred.password);
    ch.write_msg(msg);

    uint8_t status = ch.read_u8();
    if (status != kAuthOk) fail(Errc::AuthFailed, "server rejected credentials");
}

} // namespace dotdfs::dotsec
