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

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "apkscreen/errors.hpp"

namespace apkscreen {

struct PackageEntry {
    std::string path;
    std::vector<std::uint8_t> payload;
};

/// An opened APK: every archive entry enumerated and decompressed, plus the
/// digest of the original file bytes. Entry paths are unique (the first
/// occurrence of a duplicated path wins; later ones are recorded as warnings).
struct ApkPackage {
    std::vector<PackageEntry> entries;
    std::string source_path;
    std::string sha256;  // 64 hex chars over the raw archive bytes
    DiagnosticList warnings;

    const PackageEntry* find(const std::string& path) const {
        for (const auto& e : entries) {
            if (e.path == path) return &e;
        }
        return nullptr;
    }
};

/// Opens an APK (ZIP) file from disk. Throws Error{not_an_archive} when the
/// file has no usable central directory; individual bad entries (unsupported
/// compression, CRC mismatch, inflate failure) are skipped and recorded as
/// entry_corrupt warnings.
ApkPackage open_package(const std::string& path);

/// Same, over an in-memory archive image.
ApkPackage open_package_bytes(std::span<const std::uint8_t> bytes,
                              const std::string& source_name);

std::string sha256_hex(std::span<const std::uint8_t> bytes);

}  // namespace apkscreen
