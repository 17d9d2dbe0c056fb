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

#include "apkscreen/apk.hpp"

#include <openssl/evp.h>
#include <zlib.h>

#include <cstring>
#include <fstream>
#include <limits>

namespace apkscreen {

namespace {

constexpr std::uint32_t kEocdSignature = 0x06054b50;     // PK\x05\x06
constexpr std::uint32_t kCentralSignature = 0x02014b50;  // PK\x01\x02
constexpr std::uint32_t kLocalSignature = 0x04034b50;    // PK\x03\x04
constexpr std::uint16_t kMethodStored = 0;
constexpr std::uint16_t kMethodDeflate = 8;

// Largest uncompressed entry we are willing to materialize. Real APK entries
// are far below this; a mutated size field must not drive allocation.
constexpr std::uint64_t kMaxEntryBytes = 1ull << 28;  // 256 MiB

std::uint16_t read_u16(std::span<const std::uint8_t> d, std::size_t off) {
    return static_cast<std::uint16_t>(d[off] | (d[off + 1] << 8));
}

std::uint32_t read_u32(std::span<const std::uint8_t> d, std::size_t off) {
    return static_cast<std::uint32_t>(d[off]) | (static_cast<std::uint32_t>(d[off + 1]) << 8) |
           (static_cast<std::uint32_t>(d[off + 2]) << 16) |
           (static_cast<std::uint32_t>(d[off + 3]) << 24);
}

struct CentralRecord {
    std::string path;
    std::uint16_t method = 0;
    std::uint32_t crc32 = 0;
    std::uint64_t compressed_size = 0;
    std::uint64_t uncompressed_size = 0;
    std::uint64_t local_offset = 0;
};

// Locates the end-of-central-directory record by scanning backwards through
// the trailing comment region (comment can be up to 64 KiB).
std::size_t find_eocd(std::span<const std::uint8_t> d) {
    if (d.size() < 22) throw Error(ErrorCode::not_an_archive, "file too small for a ZIP archive");
    const std::size_t scan_limit = d.size() >= 22 + 65535 ? d.size() - 22 - 65535 : 0;
    for (std::size_t pos = d.size() - 22;; --pos) {
        if (read_u32(d, pos) == kEocdSignature) {
            const std::uint16_t comment_len = read_u16(d, pos + 20);
            if (pos + 22 + comment_len == d.size()) return pos;
        }
        if (pos == scan_limit) break;
    }
    throw Error(ErrorCode::not_an_archive, "end-of-central-directory record not found");
}

std::vector<CentralRecord> read_central_directory(std::span<const std::uint8_t> d) {
    const std::size_t eocd = find_eocd(d);
    const std::uint16_t entry_count = read_u16(d, eocd + 10);
    const std::uint32_t dir_size = read_u32(d, eocd + 12);
    const std::uint32_t dir_offset = read_u32(d, eocd + 16);
    if (static_cast<std::uint64_t>(dir_offset) + dir_size > eocd) {
        throw Error(ErrorCode::not_an_archive, "central directory extends past its own end record");
    }

    std::vector<CentralRecord> records;
    std::size_t pos = dir_offset;
    for (std::uint16_t i = 0; i < entry_count; ++i) {
        if (pos + 46 > d.size() || read_u32(d, pos) != kCentralSignature) {
            throw Error(ErrorCode::not_an_archive, "truncated central directory");
        }
        CentralRecord rec;
        rec.method = read_u16(d, pos + 10);
        rec.crc32 = read_u32(d, pos + 16);
        rec.compressed_size = read_u32(d, pos + 20);
        rec.uncompressed_size = read_u32(d, pos + 24);
        const std::uint16_t name_len = read_u16(d, pos + 28);
        const std::uint16_t extra_len = read_u16(d, pos + 30);
        const std::uint16_t comment_len = read_u16(d, pos + 32);
        rec.local_offset = read_u32(d, pos + 42);
        if (pos + 46 + name_len > d.size()) {
            throw Error(ErrorCode::not_an_archive, "truncated central directory file name");
        }
        rec.path.assign(reinterpret_cast<const char*>(d.data() + pos + 46), name_len);
        pos += 46 + static_cast<std::size_t>(name_len) + extra_len + comment_len;
        records.push_back(std::move(rec));
    }
    return records;
}

std::vector<std::uint8_t> inflate_raw(std::span<const std::uint8_t> in,
                                      std::uint64_t expected_out) {
    std::vector<std::uint8_t> out(expected_out);
    z_stream zs;
    std::memset(&zs, 0, sizeof(zs));
    if (inflateInit2(&zs, -MAX_WBITS) != Z_OK) {
        throw Error(ErrorCode::entry_corrupt, "inflate init failed");
    }
    zs.next_in = const_cast<Bytef*>(in.data());
    zs.avail_in = static_cast<uInt>(in.size());
    zs.next_out = out.data();
    zs.avail_out = static_cast<uInt>(out.size());
    const int ret = inflate(&zs, Z_FINISH);
    const std::uint64_t produced = zs.total_out;
    inflateEnd(&zs);
    if (ret != Z_STREAM_END || produced != expected_out) {
        throw Error(ErrorCode::entry_corrupt, "deflate stream did not decode to the declared size");
    }
    return out;
}

// Extracts one entry's bytes, validating the local header and CRC.
std::vector<std::uint8_t> extract_entry(std::span<const std::uint8_t> d, const CentralRecord& rec) {
    if (rec.local_offset + 30 > d.size() || read_u32(d, rec.local_offset) != kLocalSignature) {
        throw Error(ErrorCode::entry_corrupt, "bad local file header");
    }
    const std::uint16_t name_len = read_u16(d, rec.local_offset + 26);
    const std::uint16_t extra_len = read_u16(d, rec.local_offset + 28);
    const std::uint64_t data_off = rec.local_offset + 30 + name_len + extra_len;
    if (rec.uncompressed_size > kMaxEntryBytes || rec.compressed_size > kMaxEntryBytes) {
        throw Error(ErrorCode::entry_corrupt, "declared entry size exceeds limit");
    }
    if (data_off + rec.compressed_size > d.size()) {
        throw Error(ErrorCode::entry_corrupt, "entry data extends past end of file");
    }
    std::span<const std::uint8_t> data = d.subspan(data_off, rec.compressed_size);

    std::vector<std::uint8_t> out;
    switch (rec.method) {
        case kMethodStored:
            if (rec.compressed_size != rec.uncompressed_size) {
                throw Error(ErrorCode::entry_corrupt, "stored entry with mismatched sizes");
            }
            out.assign(data.begin(), data.end());
            break;
        case kMethodDeflate:
            out = inflate_raw(data, rec.uncompressed_size);
            break;
        default:
            throw Error(ErrorCode::entry_corrupt,
                        "unsupported compression method " + std::to_string(rec.method));
    }
    const auto actual_crc =
        static_cast<std::uint32_t>(::crc32(0L, out.data(), static_cast<uInt>(out.size())));
    if (actual_crc != rec.crc32) {
        throw Error(ErrorCode::entry_corrupt, "CRC mismatch");
    }
    return out;
}

}  // namespace

std::string sha256_hex(std::span<const std::uint8_t> bytes) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int digest_len = 0;
    EVP_Digest(bytes.data(), bytes.size(), digest, &digest_len, EVP_sha256(), nullptr);
    static const char* hex = "0123456789abcdef";
    std::string out;
    out.reserve(digest_len * 2);
    for (unsigned int i = 0; i < digest_len; ++i) {
        out.push_back(hex[digest[i] >> 4]);
        out.push_back(hex[digest[i] & 0xf]);
    }
    return out;
}

ApkPackage open_package_bytes(std::span<const std::uint8_t> bytes,
                              const std::string& source_name) {
    ApkPackage pkg;
    pkg.source_path = source_name;
    pkg.sha256 = sha256_hex(bytes);

    const auto records = read_central_directory(bytes);
    for (const auto& rec : records) {
        if (pkg.find(rec.path) != nullptr) {
            pkg.warnings.push_back({ErrorCode::entry_corrupt, rec.path,
                                    "duplicate entry path; keeping first occurrence"});
            continue;
        }
        try {
            pkg.entries.push_back({rec.path, extract_entry(bytes, rec)});
        } catch (const Error& e) {
            pkg.warnings.push_back({ErrorCode::entry_corrupt, rec.path, e.what()});
        }
    }
    return pkg;
}

ApkPackage open_package(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::io_error, "cannot open " + path);
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    if (in.bad()) throw Error(ErrorCode::io_error, "read failed for " + path);
    return open_package_bytes(bytes, path);
}

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::not_an_archive: return "NotAnArchive";
        case ErrorCode::entry_corrupt: return "EntryCorrupt";
        case ErrorCode::malformed_dex: return "MalformedDex";
        case ErrorCode::no_manifest: return "NoManifest";
        case ErrorCode::malformed_manifest: return "MalformedManifest";
        case ErrorCode::duplicate_keyword: return "DuplicateKeyword";
        case ErrorCode::unknown_category: return "UnknownCategory";
        case ErrorCode::empty_catalog: return "EmptyCatalog";
        case ErrorCode::schema_mismatch: return "SchemaMismatch";
        case ErrorCode::bad_value: return "BadValue";
        case ErrorCode::bad_label: return "BadLabel";
        case ErrorCode::duplicate_sample_id: return "DuplicateSampleId";
        case ErrorCode::single_class_data: return "SingleClassData";
        case ErrorCode::dimension_mismatch: return "DimensionMismatch";
        case ErrorCode::no_convergence: return "NoConvergence";
        case ErrorCode::corrupt_model: return "CorruptModel";
        case ErrorCode::too_few_samples: return "TooFewSamples";
        case ErrorCode::empty_class: return "EmptyClass";
        case ErrorCode::io_error: return "IoError";
    }
    return "UnknownError";
}

}  // namespace apkscreen
