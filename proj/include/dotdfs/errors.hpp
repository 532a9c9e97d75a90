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
#ifndef DOTDFS_ERRORS_HPP
#define DOTDFS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace dotdfs {

enum class Errc {
    // wire
    TruncatedInput,
    NonMinimalEncoding,
    ModeTooLarge,
    MalformedFrame,
    PayloadMismatch,
    PayloadTooLarge,
    // transport / session
    ConnectFailed,
    BindFailed,
    HandshakeTimeout,
    UnsupportedService,
    UnsupportedMode,
    ParamMismatch,
    ParamRejected,
    PoolFull,
    DuplicateStream,
    TransferAborted,
    PeerReset,
    FrameError,
    OverlapConflict,
    WlmTimeout,
    // dotsec
    UnsupportedSuite,
    VerificationFailed,
    DecryptFailed,
    IntegrityFailure,
    AuthFailed,
    AccessDenied,
    // filesystem-facing
    PathOutsideRoot,
    NotFound,
    AlreadyExists,
    PermissionDenied,
    ShareViolation,
    HandleClosed,
    InvalidOffset,
    TooLarge,
    DiskFull,
    IoError,
    CycleDetected,
    // model
    DomainError,
    DegenerateGrid,
    IncompleteGrid,
    // misc
    ConfigError,
    MalformedOp,
    Internal,
};

const char* errc_name(Errc e);

class Error : public std::runtime_error {
public:
    Error(Errc code, std::string msg)
        : std::runtime_error(std::string(errc_name(code)) + ": " + msg), code_(code) {}

    Errc code() const { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, std::string msg) { throw Error(code, std::move(msg)); }

} // namespace dotdfs

#endif
