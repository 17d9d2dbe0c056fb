/*
 * Copyright (C) 2026 The apkscreen Authors
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

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace apkscreen {

enum class ErrorCode {
    // container / parser errors
    not_an_archive,
    entry_corrupt,
    malformed_dex,
    no_manifest,
    malformed_manifest,
    // catalog / matrix errors
    duplicate_keyword,
    unknown_category,
    empty_catalog,
    schema_mismatch,
    bad_value,
    bad_label,
    duplicate_sample_id,
    // learner errors
    single_class_data,
    dimension_mismatch,
    no_convergence,
    corrupt_model,
    // evaluation errors
    too_few_samples,
    empty_class,
    // generic I/O
    io_error,
};

const char* error_code_name(ErrorCode code);

/// Exception carrying a typed error code; thrown for failures that abort
/// the current operation. Recoverable per-entry problems are recorded as
/// Diagnostic values instead.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
          code_(code) {}

    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

/// A non-fatal problem noticed while processing one package entry.
struct Diagnostic {
    ErrorCode code;
    std::string context;  // e.g. entry path inside the package
    std::string message;
};

using DiagnosticList = std::vector<Diagnostic>;

}  // namespace apkscreen
