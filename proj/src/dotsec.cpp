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
#include "dotdfs/dotsec.hpp"

#include <openssl/core_names.h>
#include <openssl/crypto.h>
#include <openssl/err.h>
#include <openssl/evp.h>
#include <openssl/param_build.h>
#include <openssl/pem.h>
#include <openssl/rand.h>
#include <openssl/rsa.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "dotdfs/errors.hpp"
#include "dotdfs/wire.hpp"

namespace dotdfs::dotsec {

namespace {

[[noreturn]] void fail_openssl(Errc code, const char* what) {
    char buf[256] = "unknown";
    unsigned long err = ERR_get_error();
    if (err != 0) ERR_error_string_n(err, buf, sizeof buf);
    ERR_clear_error();
    fail(code, std::string(what) + ": " + buf);
}

struct SystemRng final : RandomSource {
    void fill(uint8_t* out, size_t n) override {
        if (RAND_bytes(out, static_cast<int>(n)) != 1)
            fail_openssl(Errc::Internal, "RAND_bytes");
    }
};

const char* cipher_name(uint8_t sc_id) {
    switch (sc_id) {
        case kScAes256Cbc: return "AES-256-CBC";
        case kScTripleDesCbc: return "DES-EDE3-CBC";
    }
    return nullptr;
}

const char* hash_name(uint8_t hash_id) {
    switch (hash_id) {
        case kHashSha1: return "SHA1";
        case kHashMd5: return "MD5";
        case kHashSha256: return "SHA2-256";
    }
    return nullptr;
}

using CipherPtr = std::unique_ptr<EVP_CIPHER, decltype(&EVP_CIPHER_free)>;
using MdPtr = std::unique_ptr<EVP_MD, decltype(&EVP_MD_free)>;
using CipherCtxPtr = std::unique_ptr<EVP_CIPHER_CTX, decltype(&EVP_CIPHER_CTX_free)>;
using PkeyCtxPtr = std::unique_ptr<EVP_PKEY_CTX, decltype(&EVP_PKEY_CTX_free)>;

CipherPtr fetch_cipher(uint8_t sc_id) {
    const char* name = cipher_name(sc_id);
    if (!name) fail(Errc::UnsupportedSuite, "unknown SC id " + std::to_string(sc_id));
    CipherPtr c(EVP_CIPHER_fetch(nullptr, name, nullptr), EVP_CIPHER_free);
    if (!c) fail_openssl(Errc::UnsupportedSuite, name);
    return c;
}

MdPtr fetch_md(uint8_t hash_id) {
    const char* name = hash_name(hash_id);
    if (!name) fail(Errc::UnsupportedSuite, "unknown hash id " + std::to_string(hash_id));
    MdPtr m(EVP_MD_fetch(nullptr, name, nullptr), EVP_MD_free);
    if (!m) fail_openssl(Errc::UnsupportedSuite, name);
    return m;
}

} // namespace

RandomSource& system_rng() {
    static SystemRng rng;
    return rng;
}

Bytes random_bytes(size_t n, RandomSource* rng) {
    Bytes out(n);
    (rng ? *rng : system_rng()).fill(out.data(), n);
    return out;
}

CipherSuite lookup_suite(uint8_t sc_id, uint8_t hash_id) {
    CipherSuite s;
    s.sc_id = sc_id;
    s.hash_id = hash_id;
    auto c = fetch_cipher(sc_id);
    s.key_len = static_cast<size_t>(EVP_CIPHER_get_key_length(c.get()));
    s.iv_len = static_cast<size_t>(EVP_CIPHER_get_iv_length(c.get()));
    s.block_len = static_cast<size_t>(EVP_CIPHER_get_block_size(c.get()));
    auto m = fetch_md(hash_id);
    s.digest_len = static_cast<size_t>(EVP_MD_get_size(m.get()));
    return s;
}

CipherSuite default_suite() { return lookup_suite(kScAes256Cbc, kHashSha256); }

Bytes digest(uint8_t hash_id, ByteView data) {
    auto md = fetch_md(hash_id);
    Bytes out(EVP_MAX_MD_SIZE);
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), out.data(), &len, md.get(), nullptr) != 1)
        fail_openssl(Errc::Internal, "EVP_Digest");
    out.resize(len);
    return out;
}

// --- RsaKeyPair -------------------------------------------------------------

RsaKeyPair::~RsaKeyPair() {
    if (pkey_) EVP_PKEY_free(pkey_);
}

RsaKeyPair::RsaKeyPair(RsaKeyPair&& other) noexcept
    : pkey_(other.pkey_), has_private_(other.has_private_) {
    other.pkey_ = nullptr;
    other.has_private_ = false;
}

RsaKeyPair& RsaKeyPair::operator=(RsaKeyPair&& other) noexcept {
    if (this != &other) {
        if (pkey_) EVP_PKEY_free(pkey_);
        pkey_ = other.pkey_;
        has_private_ = other.has_private_;
        other.pkey_ = nullptr;
        other.has_private_ = false;
    }
    return *this;
}

RsaKeyPair RsaKeyPair::generate(int bits) {
    RsaKeyPair kp;
    kp.pkey_ = EVP_RSA_gen(static_cast<unsigned int>(bits));
    if (!kp.pkey_) fail_openssl(Errc::Internal, "RSA keygen");
    kp.has_private_ = true;
    return kp;
}

RsaKeyPair RsaKeyPair::from_public(ByteView modulus, ByteView exponent) {
    BIGNUM* n = BN_bin2bn(modulus.data(), static_cast<int>(modulus.size()), nullptr);
    BIGNUM* e = BN_bin2bn(exponent.data(), static_cast<int>(exponent.size()), nullptr);
    OSSL_PARAM_BLD* bld = OSSL_PARAM_BLD_new();
    OSSL_PARAM_BLD_push_BN(bld, OSSL_PKEY_PARAM_RSA_N, n);
    OSSL_PARAM_BLD_push_BN(bld, OSSL_PKEY_PARAM_RSA_E, e);
    OSSL_PARAM* params = OSSL_PARAM_BLD_to_param(bld);

    RsaKeyPair kp;
    PkeyCtxPtr ctx(EVP_PKEY_CTX_new_from_name(nullptr, "RSA", nullptr), EVP_PKEY_CTX_free);
    if (!ctx || EVP_PKEY_fromdata_init(ctx.get()) != 1 ||
        EVP_PKEY_fromdata(ctx.get(), &kp.pkey_, EVP_PKEY_PUBLIC_KEY, params) != 1) {
        OSSL_PARAM_free(params);
        OSSL_PARAM_BLD_free(bld);
        BN_free(n);
        BN_free(e);
        fail_openssl(Errc::MalformedFrame, "rebuilding RSA public key");
    }
    OSSL_PARAM_free(params);
    OSSL_PARAM_BLD_free(bld);
    BN_free(n);
    BN_free(e);
    return kp;
}

RsaKeyPair RsaKeyPair::load_pem(const std::string& path) {
    FILE* f = std::fopen(path.c_str(), "r");
    if (!f) fail(Errc::NotFound, "keypair file " + path);
    RsaKeyPair kp;
    kp.pkey_ = PEM_read_PrivateKey(f, nullptr, nullptr, nullptr);
    std::fclose(f);
    if (!kp.pkey_) fail_openssl(Errc::ConfigError, ("parsing " + path).c_str());
    kp.has_private_ = true;
    return kp;
}

void RsaKeyPair::save_pem(const std::string& path) const {
    FILE* f = std::fopen(path.c_str(), "w");
    if (!f) fail(Errc::IoError, "cannot write " + path);
    int ok = PEM_write_PrivateKey(f, pkey_, nullptr, nullptr, 0, nullptr, nullptr);
    std::fclose(f);
    if (ok != 1) fail_openssl(Errc::IoError, "PEM_write_PrivateKey");
}

namespace {

Bytes bn_param_bytes(EVP_PKEY* pkey, const char* name) {
    BIGNUM* bn = nullptr;
    if (EVP_PKEY_get_bn_param(pkey, name, &bn) != 1)
        fail_openssl(Errc::Internal, name);
    Bytes out(static_cast<size_t>(BN_num_bytes(bn)));
    BN_bn2bin(bn, out.data());
    BN_free(bn);
    return out;
}

} // namespace

Bytes RsaKeyPair::modulus() const { return bn_param_bytes(pkey_, OSSL_PKEY_PARAM_RSA_N); }
Bytes RsaKeyPair::exponent() const { return bn_param_bytes(pkey_, OSSL_PKEY_PARAM_RSA_E); }

Bytes RsaKeyPair::oaep_encrypt(ByteView plaintext) const {
    PkeyCtxPtr ctx(EVP_PKEY_CTX_new(pkey_, nullptr), EVP_PKEY_CTX_free);
    if (!ctx || EVP_PKEY_encrypt_init(ctx.get()) != 1 ||
        EVP_PKEY_CTX_set_rsa_padding(ctx.get(), RSA_PKCS1_OAEP_PADDING) != 1 ||
        EVP_PKEY_CTX_set_rsa_oaep_md(ctx.get(), EVP_sha256()) != 1)
        fail_openssl(Errc::Internal, "OAEP encrypt init");
    size_t len = 0;
    if (EVP_PKEY_encrypt(ctx.get(), nullptr, &len, plaintext.data(), plaintext.size()) != 1)
        fail_openssl(Errc::Internal, "OAEP size");
    Bytes out(len);
    if (EVP_PKEY_encrypt(ctx.get(), out.data(), &len, plaintext.data(), plaintext.size()) != 1)
        fail_openssl(Errc::Internal, "OAEP encrypt");
    out.resize(len);
    return out;
}

Bytes RsaKeyPair::oaep_decrypt(ByteView ciphertext) const {
    if (!has_private_) fail(Errc::Internal, "decrypt needs the private key");
    PkeyCtxPtr ctx(EVP_PKEY_CTX_new(pkey_, nullptr), EVP_PKEY_CTX_free);
    if (!ctx || EVP_PKEY_decrypt_init(ctx.get()) != 1 ||
        EVP_PKEY_CTX_set_rsa_padding(ctx.get(), RSA_PKCS1_OAEP_PADDING) != 1 ||
        EVP_PKEY_CTX_set_rsa_oaep_md(ctx.get(), EVP_sha256()) != 1)
        fail_openssl(Errc::Internal, "OAEP decrypt init");
    size_t len = 0;
    if (EVP_PKEY_decrypt(ctx.get(), nullptr, &len, ciphertext.data(), ciphertext.size()) != 1) {
        ERR_clear_error();
        fail(Errc::DecryptFailed, "RSA padding failure");
    }
    Bytes out(len);
    if (EVP_PKEY_decrypt(ctx.get(), out.data(), &len, ciphertext.data(), ciphertext.size()) != 1) {
        ERR_clear_error();
        fail(Errc::DecryptFailed, "RSA padding failure");
    }
    out.resize(len);
    return out;
}

// --- public header ----------------------------------------------------------

Bytes encode_rsa_public_header(const RsaKeyPair& key) {
    Bytes out;
    ByteWriter w(out);
    Bytes n = key.modulus(), e = key.exponent();
    wire::put_varuint(w, n.size());
    w.raw(n);
    wire::put_varuint(w, e.size());
    w.raw(e);
    return out;
}

RsaPublicHeader parse_rsa_public_header(ByteView in) {
    ByteReader r(in);
    uint64_t nlen = 0, elen = 0;
    RsaPublicHeader h;
    if (!wire::get_varuint(r, nlen) || nlen > 8192 || r.remaining() < nlen)
        fail(Errc::MalformedFrame, "bad modulus length");
    auto nv = r.view(nlen);
    h.modulus.assign(nv.begin(), nv.end());
    if (!wire::get_varuint(r, elen) || elen > 64 || r.remaining() < elen)
        fail(Errc::MalformedFrame, "bad exponent length");
    auto ev = r.view(elen);
    h.exponent.assign(ev.begin(), ev.end());

    if (h.modulus.empty() || h.modulus[0] == 0)
        fail(Errc::MalformedFrame, "modulus not in canonical form");
    size_t top_bits = 0;
    for (uint8_t b = h.modulus[0]; b; b >>= 1) ++top_bits;
    size_t mod_bits = (h.modulus.size() - 1) * 8 + top_bits;
    if (mod_bits < 2048) fail(Errc::MalformedFrame, "modulus below 2048 bits");
    if (h.exponent.empty() || (h.exponent.back() & 1) == 0)
        fail(Errc::MalformedFrame, "exponent must be odd");
    bool gt_one = h.exponent.size() > 1 || h.exponent[0] > 1;
    if (!gt_one) fail(Errc::MalformedFrame, "exponent must exceed 1");
    return h;
}

// --- key exchange -------------------------------------------------------------

KeyExchange client_key_exchange(const RsaPublicHeader& server_pub, const CipherSuite& suite,
                                RandomSource* rng) {
    // validates the ids against the registry
    CipherSuite reg = lookup_suite(suite.sc_id, suite.hash_id);

    KeyExchange out;
    out.session_key.key = random_bytes(reg.key_len, rng);
    out.session_key.iv = random_bytes(reg.iv_len, rng);

    Bytes blob = out.session_key.key;
    blob.insert(blob.end(), out.session_key.iv.begin(), out.session_key.iv.end());
    Bytes h = digest(reg.hash_id, blob);
    blob.insert(blob.end(), h.begin(), h.end());

    auto pub = RsaKeyPair::from_public(server_pub.modulus, server_pub.exponent);
    Bytes enc = pub.oaep_encrypt(blob);

    ByteWriter w(out.header);
    w.u8(reg.sc_id);
    w.u8(reg.hash_id);
    wire::put_varuint(w, enc.size());
    w.raw(enc);
    return out;
}

VerifiedKey server_verify(ByteView shared_key_header, const RsaKeyPair& server_key) {
    ByteReader r(shared_key_header);
    uint8_t sc = 0, ha = 0;
    uint64_t blen = 0;
    if (!r.u8(sc) || !r.u8(ha)) fail(Errc::MalformedFrame, "short SharedKeyHeader");
    CipherSuite suite = lookup_suite(sc, ha); // UnsupportedSuite on unknown ids
    if (!wire::get_varuint(r, blen) || blen > 8192 || r.remaining() < blen)
        fail(Errc::MalformedFrame, "bad blob length");
    Bytes blob = server_key.oaep_decrypt(r.view(blen));

    if (blob.size() != suite.key_len + suite.iv_len + suite.digest_len)
        fail(Errc::VerificationFailed, "blob length off for the negotiated suite");
    ByteView key(blob.data(), suite.key_len);
    ByteView iv(blob.data() + suite.key_len, suite.iv_len);
    ByteView got_hash(blob.data() + suite.key_len + suite.iv_len, suite.digest_len);
    Bytes expect = digest(suite.hash_id, ByteView(blob.data(), suite.key_len + suite.iv_len));
    if (CRYPTO_memcmp(expect.data(), got_hash.data(), suite.digest_len) != 0)
        fail(Errc::VerificationFailed, "key+IV hash mismatch");

    VerifiedKey out;
    out.suite = suite;
    out.session_key.key.assign(key.begin(), key.end());
    out.session_key.iv.assign(iv.begin(), iv.end());
    return out;
}

// --- TSI --------------------------------------------------------------------

TsiCodec::TsiCodec(CipherSuite suite, SessionKey key)
    : suite_(suite), key_(std::move(key)), seal_chain_(key_.iv), open_chain_(key_.iv) {
    if (key_.key.size() != suite_.key_len || key_.iv.size() != suite_.iv_len)
        fail(Errc::UnsupportedSuite, "session key sized for a different suite");
}

Bytes TsiCodec::seal(ByteView plaintext) {
    auto cipher = fetch_cipher(suite_.sc_id);
    CipherCtxPtr ctx(EVP_CIPHER_CTX_new(), EVP_CIPHER_CTX_free);
    if (EVP_EncryptInit_ex2(ctx.get(), cipher.get(), key_.key.data(), seal_chain_.data(),
                            nullptr) != 1)
        fail_openssl(Errc::Internal, "EncryptInit");
    Bytes ct(plaintext.size() + suite_.block_len);
    int len1 = 0, len2 = 0;
    if (EVP_EncryptUpdate(ctx.get(), ct.data(), &len1, plaintext.data(),
                          static_cast<int>(plaintext.size())) != 1 ||
        EVP_EncryptFinal_ex(ctx.get(), ct.data() + len1, &len2) != 1)
        fail_openssl(Errc::Internal, "EncryptUpdate/Final");
    ct.resize(static_cast<size_t>(len1 + len2));

    // CBC continuation: next record chains from this one's tail block
    seal_chain_.assign(ct.end() - suite_.iv_len, ct.end());

    Bytes h = digest(suite_.hash_id, plaintext);

    Bytes out;
    ByteWriter w(out);
    w.u8(1);
    w.u8(1);
    wire::put_varuint(w, ct.size());
    w.raw(h);
    w.raw(ct);
    return out;
}

TsiCodec::OpenResult TsiCodec::open(ByteView record) {
    OpenResult out;
    ByteReader r(record);
    uint8_t m1 = 0, m2 = 0;
    if (!r.u8(m1) || !r.u8(m2)) fail(Errc::MalformedFrame, "short SecuredDataHeader");
    if (m1 == 0 && m2 == 0) {
        out.switch_to_plaintext = true;
        out.consumed = 2;
        return out;
    }
    if (m1 != 1 || m2 != 1)
        fail(Errc::MalformedFrame, "unknown SecuredDataHeader mode pair");
    uint64_t clen = 0;
    if (!wire::get_varuint(r, clen)) fail(Errc::MalformedFrame, "bad ciphertext length");
    if (clen == 0 || clen % suite_.block_len != 0 || clen > (16ull << 20))
        fail(Errc::MalformedFrame, "ciphertext length not a padded block multiple");
    if (r.remaining() < suite_.digest_len + clen)
        fail(Errc::MalformedFrame, "truncated SecuredDataHeader");
    ByteView h = r.view(suite_.digest_len);
    ByteView ct = r.view(clen);

    auto cipher = fetch_cipher(suite_.sc_id);
    CipherCtxPtr ctx(EVP_CIPHER_CTX_new(), EVP_CIPHER_CTX_free);
    if (EVP_DecryptInit_ex2(ctx.get(), cipher.get(), key_.key.data(), open_chain_.data(),
                            nullptr) != 1)
        fail_openssl(Errc::Internal, "DecryptInit");
    Bytes pt(ct.size() + suite_.block_len);
    int len1 = 0, len2 = 0;
    bool ok = EVP_DecryptUpdate(ctx.get(), pt.data(), &len1, ct.data(),
                                static_cast<int>(ct.size())) == 1 &&
              EVP_DecryptFinal_ex(ctx.get(), pt.data() + len1, &len2) == 1;
    // chain advances even on failure so a tampered record cannot desync a
    // later legitimate one into acceptance
    open_chain_.assign(ct.end() - suite_.iv_len, ct.end());
    if (!ok) {
        ERR_clear_error();
        fail(Errc::IntegrityFailure, "record does not decrypt");
    }
    pt.resize(static_cast<size_t>(len1 + len2));

    Bytes expect = digest(suite_.hash_id, pt);
    if (CRYPTO_memcmp(expect.data(), h.data(), suite_.digest_len) != 0)
        fail(Errc::IntegrityFailure, "plaintext hash mismatch");

    out.plaintext = std::move(pt);
    out.consumed = r.consumed();
    return out;
}

// --- credential store ---------------------------------------------------------

CredentialStore CredentialStore::load(const std::string& path) {
    CredentialStore s;
    s.reload(path);
    return s;
}

void CredentialStore::reload(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(Errc::NotFound, "credential file " + path);
    std::map<std::string, Entry> fresh;
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string f;
        while (std::getline(ss, f, ':')) {
            size_t b = f.find_first_not_of(" \t");
            size_t e = f.find_last_not_of(" \t\r");
            fields.push_back(b == std::string::npos ? "" : f.substr(b, e - b + 1));
        }
        if (fields.size() < 3 || fields.size() > 4 || fields[0].empty())
            fail(Errc::ConfigError,
                 path + ":" + std::to_string(lineno) + ": expected user : salt : hash");
        Entry e;
        e.salt = from_hex(fields[1]);
        e.hash = from_hex(fields[2]);
        if (fields.size() == 4) {
            e.can_read = fields[3].find('r') != std::string::npos;
            e.can_write = fields[3].find('w') != std::string::npos;
        }
        fresh.emplace(fields[0], std::move(e));
    }
    std::lock_guard lock(mutex_);
    entries_ = std::move(fresh);
}

void CredentialStore::save(const std::string& path) const {
    std::lock_guard lock(mutex_);
    std::ofstream out(path, std::ios::trunc);
    if (!out) fail(Errc::IoError, "cannot write " + path);
    for (const auto& [user, e] : entries_) {
        std::string perms = std::string(e.can_read ? "r" : "") + (e.can_write ? "w" : "");
        out << user << " : " << hex(e.salt) << " : " << hex(e.hash) << " : " << perms << "\n";
    }
}

void CredentialStore::add(const std::string& username, const std::string& password,
                          const std::string& perms, RandomSource* rng) {
    if (username.empty()) fail(Errc::ConfigError, "empty username");
    Entry e;
    e.salt = random_bytes(16, rng);
    Bytes salted = e.salt;
    salted.insert(salted.end(), password.begin(), password.end());
    e.hash = digest(kHashSha256, salted);
    e.can_read = perms.find('r') != std::string::npos;
    e.can_write = perms.find('w') != std::string::npos;
    std::lock_guard lock(mutex_);
    entries_[username] = std::move(e);
}

Principal CredentialStore::authenticate(const Credential& cred) const {
    // Fixed dummy entry keeps the unknown-user path doing the same hash and
    // compare work as the wrong-password path.
    static const Entry dummy = [] {
        Entry e;
        e.salt = Bytes(16, 0x5A);
        e.hash = Bytes(32, 0xA5);
        return e;
    }();

    std::lock_guard lock(mutex_);
    auto it = entries_.find(cred.username);
    const Entry& entry = it == entries_.end() ? dummy : it->second;
    bool known = it != entries_.end();

    Bytes salted = entry.salt;
    salted.insert(salted.end(), cred.password.begin(), cred.password.end());
    Bytes h = digest(kHashSha256, salted);
    bool match = h.size() == entry.hash.size() &&
                 CRYPTO_memcmp(h.data(), entry.hash.data(), h.size()) == 0;
    if (!(known & match)) fail(Errc::AuthFailed, "bad credentials");

    Principal p;
    p.username = cred.username;
    p.can_read = entry.can_read;
    p.can_write = entry.can_write;
    return p;
}

size_t CredentialStore::size() const {
    std::lock_guard lock(mutex_);
    return entries_.size();
}

} // namespace dotdfs::dotsec
