// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The lcr Authors

#include "lcr/error.hpp"

namespace lcr {

std::string_view error_name(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::kUnsupportedLanguage: return "UnsupportedLanguage";
        case ErrorCode::kEmptySource: return "EmptySource";
        case ErrorCode::kParseFailure: return "ParseFailure";
        case ErrorCode::kMissingEmbedding: return "MissingEmbedding";
        case ErrorCode::kZeroVector: return "ZeroVector";
        case ErrorCode::kDimMismatch: return "DimMismatch";
        case ErrorCode::kMalformedFile: return "MalformedFile";
        case ErrorCode::kEmptyInput: return "EmptyInput";
        case ErrorCode::kShapeMismatch: return "ShapeMismatch";
        case ErrorCode::kEmptyBatch: return "EmptyBatch";
        case ErrorCode::kLengthMismatch: return "LengthMismatch";
        case ErrorCode::kNonFiniteLoss: return "NonFiniteLoss";
        case ErrorCode::kAllSnippetsFailed: return "AllSnippetsFailed";
        case ErrorCode::kFingerprintMismatch: return "FingerprintMismatch";
        case ErrorCode::kMissingGroundTruth: return "MissingGroundTruth";
        case ErrorCode::kFileNotFound: return "FileNotFound";
        case ErrorCode::kAllLinesMalformed: return "AllLinesMalformed";
        case ErrorCode::kInvalidConfig: return "InvalidConfig";
        case ErrorCode::kIoError: return "IoError";
    }
    return "Unknown";
}

}  // namespace lcr
