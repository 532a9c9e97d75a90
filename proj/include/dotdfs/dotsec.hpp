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
#ifndef DOTDFS_DOTSEC_HPP
#define DOTDFS_DOTSEC_HPP

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "dotdfs/bytes.hpp"

// The security layer: RSA one-way verification, symmetric key agreement,
// cipher negotiation, credential authentication, and the TSI encrypted
// record framing with the semi-secure plaintext switch. Suite ids and wire
// layouts are documented in docs/dotsec.md.

typedef struct evp_pkey_st EVP_PKEY;

namespace dotdfs::dotsec {

struct RandomSource {
    virtual ~RandomSource() = default;
    virtual void fill(uint8_t* out, size_t n) = 0;
};

RandomSource& system_rng();

Bytes random_bytes(size_t n, RandomSource* rng = nullptr);

// --- cipher suites ------------------------------------------------------

enum : uint8_t {
    kScAes256Cbc = 1, // the protocol's Rijndael slot
    kScTripleDesCbc = 2,
};

enum : uint8_t {
    kHashSha1 = 1,
    kHashMd5 = 2,
    kHashSha256 = 3,
};

struct CipherSuite {
    uint8_t sc_id = kScAes256Cbc;
    uint8_t hash_id = kHashSha256;
    size_t key_len = 32;
    size_t iv_len = 16;
    size_t block_len = 16;
    size_t digest_len = 32;

    bool operator==(const CipherSuite&) const = default;
};

// Throws Error(UnsupportedSuite) for unregistered ids.
CipherSuite lookup_suite(uint8_t sc_id, uint8_t hash_id);
CipherSuite default_suite();

Bytes digest(uint8_t hash_id, ByteView data);

// --- RSA keypair and the public header -----------------------------------

class RsaKeyPair {
public:
    RsaKeyPair() = default;
    ~RsaKeyPair();
    RsaKeyPair(RsaKeyPair&&) noexcept;
    RsaKeyPair& operator=(RsaKeyPair&&) noexcept;
    RsaKeyPair(const RsaKeyPair&) = delete;
    RsaKeyPair& operator=(const RsaKeyPair&) = delete;

    static RsaKeyPair generate(int bits = 2048);
    static RsaKeyPair from_public(ByteView modulus, ByteView exponent);
    static RsaKeyPair load_pem(const std::string& path);
    void save_pem(const std::string& path) const;

    bool has_private() const { return has_private_; }
    Bytes modulus() const;  // big-endian, no leading zero
    Bytes exponent() const; // big-endian

    Bytes oaep_encrypt(ByteView plaintext) const;
    Bytes oaep_decrypt(ByteView ciphertext) const; // throws Error(DecryptFailed)

private:
    EVP_PKEY* pkey_ = nullptr;
    bool has_private_ = false;
};

// [modulus VarUInt length + bytes][exponent VarUInt length + bytes]
Bytes encode_rsa_public_header(const RsaKeyPair& key);

struct RsaPublicHeader {
    Bytes modulus;
    Bytes exponent;
};

// Validates modulus >= 2048 bits and exponent odd, > 1.
RsaPublicHeader parse_rsa_public_header(ByteView in);

// --- key exchange ---------------------------------------------------------

struct SessionKey {
    Bytes key;
    Bytes iv;

    bool operator==(const SessionKey&) const = default;
};

// [crypto:1][hash_alg:1][blob VarUInt length + bytes]
// blob = RSA-OAEP(key || iv || H(key || iv))
struct KeyExchange {
    Bytes header; // SharedKeyHeader wire bytes
    SessionKey session_key;
};

KeyExchange client_key_exchange(const RsaPublicHeader& server_pub, const CipherSuite& suite,
                                RandomSource* rng = nullptr);

struct VerifiedKey {
    CipherSuite suite;
    SessionKey session_key;
};

// Decrypts the blob, recomputes H(key || iv) and admits the client only on a
// byte-exact match. Throws DecryptFailed / VerificationFailed /
// UnsupportedSuite.
VerifiedKey server_verify(ByteView shared_key_header, const RsaKeyPair& server_key);

// --- TSI record codec -------------------------------------------------------
// SecuredDataHeader: [mode1:1][mode2:1][length VarUInt][hash: digest_len]
// [ciphertext: length]. mode1 = mode2 = 0 carries nothing further and flips
// the channel to plaintext pass-through (semi-secure). Each direction chains
// CBC IVs: a record's IV is the previous record's last ciphertext block.

inline constexpr std::array<uint8_t, 2> kSwitchToPlaintext = {0x00, 0x00};
inline constexpr std::array<uint8_t, 2> kRearmTsi = {0xFF, 0xFF};

class TsiCodec {
public:
    TsiCodec(CipherSuite suite, SessionKey key);

    Bytes seal(ByteView plaintext);

    struct OpenResult {
        bool switch_to_plaintext = false;
        Bytes plaintext;
        size_t consumed = 0;
    };

    // Throws Error(IntegrityFailure) on hash mismatch, Error(MalformedFrame)
    // on a bad mode pair or short input.
    OpenResult open(ByteView record);

    const CipherSuite& suite() const { return suite_; }

private:
    CipherSuite suite_;
    SessionKey key_;
    Bytes seal_chain_; // send-direction IV chain
    Bytes open_chain_; // recv-direction IV chain
};

// --- credentials ------------------------------------------------------------

struct Credential {
    std::string username;
    std::string password;
};

struct Principal {
    std::string username;
    bool can_read = true;
    bool can_write = true;
};

// Line-oriented store: `username : salt-hex : sha256(salt || password)-hex
// [: perms]`, perms one of r, w, rw (default rw).
class CredentialStore {
public:
    static CredentialStore load(const std::string& path);
    void save(const std::string& path) const;
    void reload(const std::string& path);

    void add(const std::string& username, const std::string& password,
             const std::string& perms = "rw", RandomSource* rng = nullptr);

    // Constant-time verification; unknown users burn the same hash work as
    // wrong passwords. Throws Error(AuthFailed) without distinguishing why.
    Principal authenticate(const Credential& cred) const;

    size_t size() const;

private:
    struct Entry {
        Bytes salt;
        Bytes hash;
        bool can_read = true;
        bool can_write = true;
    };
    mutable std::mutex mutex_;
    std::map<std::string, Entry> entries_;
};

} // namespace dotdfs::dotsec

#endif
