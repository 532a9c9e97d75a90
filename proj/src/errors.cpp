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
#include "dotdfs/errors.hpp"

namespace dotdfs {

const char* errc_name(Errc e) {
    switch (e) {
        case Errc::TruncatedInput: return "TruncatedInput";
        case Errc::NonMinimalEncoding: return "NonMinimalEncoding";
        case Errc::ModeTooLarge: return "ModeTooLarge";
        case Errc::MalformedFrame: return "MalformedFrame";
        case Errc::PayloadMismatch: return "PayloadMismatch";
        case Errc::PayloadTooLarge: return "PayloadTooLarge";
        case Errc::ConnectFailed: return "ConnectFailed";
        case Errc::BindFailed: return "BindFailed";
        case Errc::HandshakeTimeout: return "HandshakeTimeout";
        case Errc::UnsupportedService: return "UnsupportedService";
        case Errc::UnsupportedMode: return "UnsupportedMode";
        case Errc::ParamMismatch: return "ParamMismatch";
        case Errc::ParamRejected: return "ParamRejected";
        case Errc::PoolFull: return "PoolFull";
        case Errc::DuplicateStream: return "DuplicateStream";
        case Errc::TransferAborted: return "TransferAborted";
        case Errc::PeerReset: return "PeerReset";
        case Errc::FrameError: return "FrameError";
        case Errc::OverlapConflict: return "OverlapConflict";
        case Errc::WlmTimeout: return "WlmTimeout";
        case Errc::UnsupportedSuite: return "UnsupportedSuite";
        case Errc::VerificationFailed: return "VerificationFailed";
        case Errc::DecryptFailed: return "DecryptFailed";
        case Errc::IntegrityFailure: return "IntegrityFailure";
        case Errc::AuthFailed: return "AuthFailed";
        case Errc::AccessDenied: return "AccessDenied";
        case Errc::PathOutsideRoot: return "PathOutsideRoot";
        case Errc::NotFound: return "NotFound";
        case Errc::AlreadyExists: return "AlreadyExists";
        case Errc::PermissionDenied: return "PermissionDenied";
        case Errc::ShareViolation: return "ShareViolation";
        case Errc::HandleClosed: return "HandleClosed";
        case Errc::InvalidOffset: return "InvalidOffset";
        case Errc::TooLarge: return "TooLarge";
        case Errc::DiskFull: return "DiskFull";
        case Errc::IoError: return "IoError";
        case Errc::CycleDetected: return "CycleDetected";
        case Errc::DomainError: return "DomainError";
        case Errc::DegenerateGrid: return "DegenerateGrid";
        case Errc::IncompleteGrid: return "IncompleteGrid";
        case Errc::ConfigError: return "ConfigError";
        case Errc::MalformedOp: return "MalformedOp";
        case Errc::Internal: return "Internal";
    }
    return "UnknownError";
}

} // namespace dotdfs
