#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <zlib.h>

#include "bsb/errors.hpp"
#include "bsb/keyspace.hpp"
#include "bsb/rng.hpp"
#include "bsb/trace.hpp"

namespace bsb {

// Raw DEFLATE (no zlib/gzip wrapper), level 9, default strategy.
inline constexpr int ntc_compression_level = 9;
inline constexpr std::string_view ntc_compressor = "deflate-raw-9";

// Canonical "src,dst\n" serialization fed to the compressor.
inline std::string serialize_pairs(const std::vector<trace_row>& rows) {
  std::string s;
  s.reserve(rows.size() * 8);
  for (const auto& r : rows) {
    s += std::to_string(r.src);
    s += ',';
    s += std::to_string(r.dst);
    s += '\n';
  }
  return s;
}

inline std::vector<std::uint8_t> deflate_bytes(std::string_view data) {
  z_stream zs{};
  if (deflateInit2(&zs, ntc_compression_level, Z_DEFLATED, -15, 8, Z_DEFAULT_STRATEGY) != Z_OK)
    throw invariant_error("deflateInit2 failed");
  std::vector<std::uint8_t> out(deflateBound(&zs, static_cast<uLong>(data.size())));
  zs.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(data.data()));
  zs.avail_in = static_cast<uInt>(data.size());
  zs.next_out = out.data();
  zs.avail_out = static_cast<uInt>(out.size());
  const int rc = deflate(&zs, Z_FINISH);
  const auto produced = zs.total_out;
  deflateEnd(&zs);
  if (rc != Z_STREAM_END) throw invariant_error("deflate did not finish");
  out.resize(produced);
  return out;
}

struct ntc_report {
  std::uint64_t rows = 0;
  std::uint64_t original_bytes = 0;
  std::uint64_t shuffled_bytes = 0;
  std::uint64_t random_bytes = 0;
  double ntc = 0.0; // shuffled / random
  std::uint64_t seed = 0;
};

// The three pair files whose compressed sizes define non-temporal complexity.
struct ntc_files {
  std::string original;
  std::string shuffled; // seeded permutation of original's lines
  std::string random;   // same line count, uniform pairs over the keyspace, src != dst
};

inline ntc_files make_ntc_files(const std::vector<trace_row>& rows, key_space ks, std::uint64_t seed) {
  if (rows.empty()) throw data_error("ntc: empty trace");
  rng gen(seed);
  auto shuffled = rows;
  gen.shuffle(std::span<trace_row>(shuffled));

  const std::uint64_t n = ks.size();
  std::vector<trace_row> random;
  random.reserve(rows.size());
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const auto src = gen.below(n);
    auto dst = gen.below(n - 1);
    if (dst >= src) ++dst;
    random.push_back({src, dst, std::nullopt, 1.0});
  }
  return {serialize_pairs(rows), serialize_pairs(shuffled), serialize_pairs(random)};
}

inline ntc_report ntc(const std::vector<trace_row>& rows, key_space ks, std::uint64_t seed) {
  const auto files = make_ntc_files(rows, ks, seed);
  ntc_report r;
  r.rows = rows.size();
  r.seed = seed;
  r.original_bytes = deflate_bytes(files.original).size();
  r.shuffled_bytes = deflate_bytes(files.shuffled).size();
  r.random_bytes = deflate_bytes(files.random).size();
  r.ntc = static_cast<double>(r.shuffled_bytes) / static_cast<double>(r.random_bytes);
  return r;
}

} // namespace bsb
