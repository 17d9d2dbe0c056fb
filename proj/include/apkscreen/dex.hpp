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

/// True when the payload begins with a DEX magic (versions 035-038).
bool looks_like_dex(std::span<const std::uint8_t> payload);

/// Decodes the string_ids table of a single DEX image. Header fields that are
/// internally inconsistent raise Error{malformed_dex}; individual undecodable
/// string items are skipped and recorded in diags.
std::set<std::string> dex_string_table(std::span<const std::uint8_t> payload,
                                       DiagnosticList& diags,
                                       const std::string& context);

/// Union of the decoded string tables of every DEX entry in the package
/// (multidex included; entries are recognized by magic, not by name).
/// Malformed DEX entries contribute nothing but are recorded in diags.
std::set<std::string> extract_dex_strings(const ApkPackage& pkg,
                                          DiagnosticList* diags = nullptr);

/// Decodes one Modified-UTF-8 string (surrogate pairs folded to code points,
/// re-encoded as UTF-8). Returns false on any invalid sequence.
bool decode_mutf8(std::span<const std::uint8_t> bytes, std::string& out);

}  // namespace apkscreen
