#pragma once

#include <bit>
#include <cstdint>
#include <string>

#include "bsb/errors.hpp"

namespace bsb {

using node_key = std::uint32_t;

// A keyspace of n = 2^bits identifiers, 0 .. n-1.
class key_space {
 public:
  static constexpr unsigned max_bits = 24;

  constexpr key_space() = default;

  explicit constexpr key_space(unsigned bits) : bits_(bits) {
    if (bits < 1 || bits > max_bits)
      throw config_error("key_space: bits must lie in [1, " + std::to_string(max_bits) + "]");
  }

  // Rejects any n that is not a power of two >= 2.
  static key_space from_size(std::uint64_t n) {
    if (n < 2 || !std::has_single_bit(n))
      throw config_error("node count " + std::to_string(n) + " is not a power of two >= 2");
    return key_space(static_cast<unsigned>(std::countr_zero(n)));
  }

  constexpr unsigned bits() const noexcept { return bits_; }
  constexpr std::uint32_t size() const noexcept { return std::uint32_t{1} << bits_; }
  constexpr node_key mask() const noexcept { return size() - 1; }
  constexpr bool contains(std::uint64_t k) const noexcept { return k < size(); }

  friend constexpr bool operator==(key_space, key_space) = default;

 private:
  unsigned bits_ = 1;
};

// Keys at XOR distance [2^index, 2^(index+1)) from some source; an aligned block.
struct bucket {
  unsigned index = 0;
  node_key start = 0;
  node_key end = 0; // inclusive

  constexpr std::uint32_t size() const noexcept { return end - start + 1; }
  constexpr bool contains(node_key k) const noexcept { return start <= k && k <= end; }

  friend constexpr bool operator==(const bucket&, const bucket&) = default;
};

constexpr std::uint32_t xor_distance(node_key a, node_key b) noexcept { return a ^ b; }

// Clockwise hops along the ring from i to j.
constexpr std::uint32_t ring_distance(node_key i, node_key j, key_space ks) noexcept {
  return (j - i) & ks.mask();
}

// Number of leading key bits shared by a and b.
constexpr unsigned common_prefix_len(node_key a, node_key b, key_space ks) noexcept {
  return ks.bits() - static_cast<unsigned>(std::bit_width(a ^ b));
}

inline bucket bucket_range(node_key source, unsigned j, key_space ks) {
  if (j >= ks.bits())
    throw std::out_of_range("bucket index " + std::to_string(j) + " outside [0, " +
                            std::to_string(ks.bits()) + ")");
  const node_key start = ((source ^ (node_key{1} << j)) >> j) << j;
  return bucket{j, start, start + (node_key{1} << j) - 1};
}

inline unsigned bucket_of(node_key source, node_key k) {
  if (source == k)
    throw std::invalid_argument("bucket_of: key equals source");
  return static_cast<unsigned>(std::bit_width(source ^ k)) - 1;
}

} // namespace bsb
