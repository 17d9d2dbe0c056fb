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
#include <set>
#include <span>
#include <string>

#include "apkscreen/apk.hpp"
#include "apkscreen/errors.hpp"

namespace apkscreen {

struct PermissionExtraction {
    std::set<std::string> permissions;  // bare names, android.permission. stripped
    bool fallback_used = false;
};

/// Collects the android:name of every uses-permission element from
/// AndroidManifest.xml. Handles the binary (AXML chunk) encoding and plain
/// text XML; a structurally unparseable manifest degrades to a byte-level
/// token scan with fallback_used set. A missing manifest yields an empty
/// result plus a no_manifest diagnostic.
PermissionExtraction extract_manifest_permissions(const ApkPackage& pkg,
                                                  DiagnosticList* diags = nullptr);

/// Same, over raw manifest bytes (exposed for fuzzing and fixtures).
PermissionExtraction parse_manifest(std::span<const std::uint8_t> payload,
                                    DiagnosticList& diags);

/// Strips the android.permission. prefix; other prefixes are kept whole.
std::string strip_permission_prefix(const std::string& name);

}  // namespace apkscreen
