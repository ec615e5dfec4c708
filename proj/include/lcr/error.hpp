// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The lcr Authors

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lcr {

/// Every failure surfaced by the library carries one of these codes. The
/// CLI prints the code name verbatim, so names are part of the interface.
enum class ErrorCode {
    kUnsupportedLanguage,
    kEmptySource,
    kParseFailure,
    kMissingEmbedding,
    kZeroVector,
    kDimMismatch,
    kMalformedFile,
    kEmptyInput,
    kShapeMismatch,
    kEmptyBatch,
    kLengthMismatch,
    kNonFiniteLoss,
    kAllSnippetsFailed,
    kFingerprintMismatch,
    kMissingGroundTruth,
    kFileNotFound,
    kAllLinesMalformed,
    kInvalidConfig,
    kIoError,
};

std::string_view error_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }
    std::string_view name() const noexcept { return error_name(code_); }

private:
    ErrorCode code_;
};

}  // namespace lcr
