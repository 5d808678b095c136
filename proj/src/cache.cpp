#include "cdelta/cache.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iterator>

namespace cdelta {
namespace {

constexpr std::uint8_t kMagic[4] = {'C', 'D', 'R', 'L'};
constexpr std::size_t kHeader = 4 + 1 + 3 * 4;
constexpr std::size_t kChecksum = 8;

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::uint32_t get_u32(std::span<const std::uint8_t> b, std::size_t at) {
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= std::uint32_t{b[at + i]} << (8 * i);
  return v;
}

}  // namespace

std::array<std::uint8_t, 8> cache_checksum(std::span<const std::uint8_t> bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw Error(ErrorCode::InternalInconsistency, "SHA-256 computation failed");
  std::array<std::uint8_t, 8> out{};
  std::copy_n(digest, out.size(), out.begin());
  return out;
}

std::vector<std::uint8_t> encode_cache(const FiniteRing& ring) {
  const std::size_t n = ring.order();
  std::vector<std::uint8_t> out;
  out.reserve(kHeader + 8 * n * n + kChecksum);
  out.insert(out.end(), std::begin(kMagic), std::end(kMagic));
  out.push_back(kCacheVersion);
  put_u32(out, static_cast<std::uint32_t>(n));
  put_u32(out, ring.zero());
  put_u32(out, ring.one());
  for (Index v : ring.add_table()) put_u32(out, v);
  for (Index v : ring.mul_table()) put_u32(out, v);
  const auto sum = cache_checksum(out);
  out.insert(out.end(), sum.begin(), sum.end());
  return out;
}

FiniteRing decode_cache(std::span<const std::uint8_t> bytes, const std::string& name, const BuildOptions& options) {
  if (bytes.size() < 4 || !std::equal(std::begin(kMagic), std::end(kMagic), bytes.begin()))
    throw Error(ErrorCode::BadMagic, "not a table cache (missing CDRL magic)");
  if (bytes.size() < 5) throw Error(ErrorCode::ChecksumMismatch, "table cache is truncated");
  if (bytes[4] != kCacheVersion)
    throw Error(ErrorCode::VersionUnsupported, "unsupported table cache version " + std::to_string(bytes[4]));
  if (bytes.size() < kHeader + kChecksum) throw Error(ErrorCode::ChecksumMismatch, "table cache is truncated");
  const std::size_t body = bytes.size() - kChecksum;
  const auto sum = cache_checksum(bytes.first(body));
  if (!std::equal(sum.begin(), sum.end(), bytes.begin() + static_cast<std::ptrdiff_t>(body)))
    throw Error(ErrorCode::ChecksumMismatch, "table cache checksum does not match its contents");
  const std::size_t n = get_u32(bytes, 5);
  require_order_within(n, options.order_cap, name);
  if (body != kHeader + 8 * n * n)
    throw Error(ErrorCode::ChecksumMismatch, "table cache length does not match its declared order");

  RingTables t;
  t.order = n;
  t.zero = get_u32(bytes, 9);
  t.one = get_u32(bytes, 13);
  t.add.resize(n * n);
  t.mul.resize(n * n);
  for (std::size_t i = 0; i < n * n; ++i) {
    t.add[i] = get_u32(bytes, kHeader + 4 * i);
    t.mul[i] = get_u32(bytes, kHeader + 4 * (n * n + i));
  }
  Provenance p{name, "table", {}, {static_cast<long>(n)}, {}};
  return FiniteRing::create(std::move(t), std::move(p), Layout::scalar(), options);
}

void write_cache(const FiniteRing& ring, const std::filesystem::path& path) {
  const auto bytes = encode_cache(ring);
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::IoError, "cannot write '" + tmp.string() + "'");
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out.flush()) throw Error(ErrorCode::IoError, "cannot write '" + tmp.string() + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error(ErrorCode::IoError, "cannot move cache into place at '" + path.string() + "'");
  }
}

FiniteRing read_cache(const std::filesystem::path& path, const BuildOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot read '" + path.string() + "'");
  const std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return decode_cache(bytes, "Cache(" + path.filename().string() + ")", options);
}

}  // namespace cdelta
