#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "bsb/errors.hpp"
#include "bsb/keyspace.hpp"
#include "bsb/rng.hpp"
#include "bsb/trace.hpp"

namespace bsb {

struct zipf_spec {
  double alpha = 2.0;
  std::uint64_t rows = 100000;
  std::uint32_t n = 64;
  std::uint64_t seed = 1;
};

// Maps a pair index in [0, n(n-1)) to an ordered pair with src != dst.
inline trace_row pair_from_index(std::uint64_t p, std::uint32_t n) {
  const std::uint64_t src = p / (n - 1);
  std::uint64_t dst = p % (n - 1);
  if (dst >= src) ++dst;
  return {src, dst, std::nullopt, 1.0};
}

// Seeded random bijection from rank (0-based) to pair index. Consumes gen.
inline std::vector<std::uint64_t> zipf_rank_order(std::uint32_t n, rng& gen) {
  const std::uint64_t pairs = std::uint64_t{n} * (n - 1);
  std::vector<std::uint64_t> order(pairs);
  for (std::uint64_t i = 0; i < pairs; ++i) order[i] = i;
  gen.shuffle(std::span<std::uint64_t>(order));
  return order;
}

// Finite-support Zipf over the n(n-1) ordered pairs: rank r has weight r^-alpha and
// ranks are assigned to pairs by a seeded random bijection.
inline std::vector<trace_row> gen_zipf(const zipf_spec& spec) {
  if (!(spec.alpha > 1.0)) throw config_error("zipf alpha must be > 1");
  if (spec.n < 2) throw config_error("zipf needs at least 2 nodes");

  const std::uint64_t pairs = std::uint64_t{spec.n} * (spec.n - 1);
  rng gen(spec.seed);
  const auto rank_to_pair = zipf_rank_order(spec.n, gen);

  std::vector<double> cdf(pairs);
  double acc = 0.0;
  for (std::uint64_t r = 0; r < pairs; ++r) {
    acc += std::pow(static_cast<double>(r + 1), -spec.alpha);
    cdf[r] = acc;
  }

  std::vector<trace_row> out;
  out.reserve(spec.rows);
  for (std::uint64_t k = 0; k < spec.rows; ++k) {
    const double u = gen.unit() * acc;
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    if (it == cdf.end()) --it;
    out.push_back(pair_from_index(rank_to_pair[static_cast<std::size_t>(it - cdf.begin())], spec.n));
  }
  return out;
}

// Each row an independent uniform ordered pair with src != dst.
inline std::vector<trace_row> gen_uniform(std::uint32_t n, std::uint64_t rows, std::uint64_t seed) {
  if (n < 2) throw config_error("uniform trace needs at least 2 nodes");
  rng gen(seed);
  const std::uint64_t pairs = std::uint64_t{n} * (n - 1);
  std::vector<trace_row> out;
  out.reserve(rows);
  for (std::uint64_t k = 0; k < rows; ++k) out.push_back(pair_from_index(gen.below(pairs), n));
  return out;
}

} // namespace bsb
