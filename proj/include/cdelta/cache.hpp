#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "cdelta/ring.hpp"

namespace cdelta {

/// Binary table cache ("CDRL"): magic, version byte 0x01, then order, zero
/// and one as little-endian u32, the addition and multiplication tables
/// (order^2 little-endian u32 each, row-major) and finally the first 8 bytes
/// of the SHA-256 digest of everything before it.
constexpr std::uint8_t kCacheVersion = 1;

std::vector<std::uint8_t> encode_cache(const FiniteRing& ring);

/// Throws BadMagic, VersionUnsupported, ChecksumMismatch (also for truncated
/// or oversized input) and OrderCapExceeded; the tables are then verified
/// like any other ring. `name` becomes the ring name.
FiniteRing decode_cache(std::span<const std::uint8_t> bytes, const std::string& name,
                        const BuildOptions& options = {});

/// Writes through a temporary file in the target directory and renames it.
void write_cache(const FiniteRing& ring, const std::filesystem::path& path);
/// Throws IoError when the file cannot be read.
FiniteRing read_cache(const std::filesystem::path& path, const BuildOptions& options = {});

/// First 8 bytes of SHA-256.
std::array<std::uint8_t, 8> cache_checksum(std::span<const std::uint8_t> bytes);

}  // namespace cdelta
