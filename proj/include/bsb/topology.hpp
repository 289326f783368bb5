#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bsb/demand.hpp"
#include "bsb/errors.hpp"
#include "bsb/keyspace.hpp"

namespace bsb {

enum class algorithm { chord, bsb_half, bsb_max, permutations };

inline constexpr algorithm all_algorithms[] = {algorithm::chord, algorithm::bsb_half, algorithm::bsb_max,
                                               algorithm::permutations};

constexpr std::string_view to_string(algorithm a) noexcept {
  switch (a) {
    case algorithm::chord: return "chord";
    case algorithm::bsb_half: return "bsb-half";
    case algorithm::bsb_max: return "bsb-max";
    case algorithm::permutations: return "permutations";
  }
  return "?";
}

inline algorithm parse_algorithm(std::string_view name) {
  for (auto a : all_algorithms)
    if (to_string(a) == name) return a;
  throw config_error("unknown algorithm '" + std::string(name) + "'");
}

constexpr bool is_bucket_based(algorithm a) noexcept { return a != algorithm::permutations; }

// Ring distances shared by every node of a permutations topology. Sorted, always holds 1.
struct coin_set {
  std::vector<std::uint32_t> coins;

  bool contains(std::uint32_t c) const { return std::binary_search(coins.begin(), coins.end(), c); }
  friend bool operator==(const coin_set&, const coin_set&) = default;
};

// Directed overlay: ring successor edges plus each node's selected peers.
struct topology {
  key_space ks;
  algorithm kind = algorithm::chord;
  // Sorted, de-duplicated out-neighbours of each node; always includes (i + 1) mod n.
  std::vector<std::vector<node_key>> out;
  // Bucket-based kinds only: bucket_peers[i * m + j] is node i's peer in bucket j.
  std::vector<node_key> bucket_peers;
  // Permutations only.
  coin_set coins;

  std::uint32_t size() const noexcept { return ks.size(); }

  std::span<const node_key> peers_of(node_key i) const {
    return std::span<const node_key>(bucket_peers).subspan(std::size_t{i} * ks.bits(), ks.bits());
  }
};

namespace detail {

inline void materialize_bucket_edges(topology& t) {
  const auto n = t.ks.size();
  t.out.assign(n, {});
  for (node_key i = 0; i < n; ++i) {
    auto& edges = t.out[i];
    auto peers = t.peers_of(i);
    edges.assign(peers.begin(), peers.end());
    edges.push_back((i + 1) & t.ks.mask());
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  }
}

} // namespace detail

// Node i's k-th peer is i XOR 2^k.
inline topology select_chord(key_space ks) {
  topology t{ks, algorithm::chord, {}, {}, {}};
  const auto m = ks.bits();
  t.bucket_peers.resize(std::size_t{ks.size()} * m);
  for (node_key i = 0; i < ks.size(); ++i)
    for (unsigned k = 0; k < m; ++k) t.bucket_peers[std::size_t{i} * m + k] = i ^ (node_key{1} << k);
  detail::materialize_bucket_edges(t);
  return t;
}

enum class split_strategy { half_split, max_demand };

// Offset (within the bucket) of the mid-node: the first key at which the
// cumulative demand reaches half the bucket total. nullopt for a zero-demand bucket.
inline std::optional<std::size_t> locate_half_split(std::span<const double> demand) {
  double total = 0.0;
  for (double v : demand) total += v;
  if (total <= 0.0) return std::nullopt;
  const double half = total / 2;
  double cumulative = 0.0;
  for (std::size_t k = 0; k < demand.size(); ++k) {
    cumulative += demand[k];
    if (cumulative >= half) return k;
  }
  return demand.size() - 1; // not reached: the running sum ends at total
}

// Offset of the first maximum. nullopt for a zero-demand bucket.
inline std::optional<std::size_t> locate_max_demand(std::span<const double> demand) {
  double best = 0.0;
  std::optional<std::size_t> at;
  for (std::size_t k = 0; k < demand.size(); ++k) {
    if (demand[k] > best) {
      best = demand[k];
      at = k;
    }
  }
  return at;
}

// One peer per bucket chosen from the source's demand row; buckets without demand
// fall back to the Chord peer.
inline topology select_bsb(key_space ks, const demand_matrix& d, split_strategy strategy) {
  if (d.size() != ks.size())
    throw data_error("demand matrix size " + std::to_string(d.size()) + " does not match n = " +
                     std::to_string(ks.size()));
  topology t{ks, strategy == split_strategy::half_split ? algorithm::bsb_half : algorithm::bsb_max, {}, {}, {}};
  const auto m = ks.bits();
  t.bucket_peers.resize(std::size_t{ks.size()} * m);
  for (node_key i = 0; i < ks.size(); ++i) {
    const auto row = d.row(i);
    for (unsigned j = 0; j < m; ++j) {
      const auto b = bucket_range(i, j, ks);
      const auto slice = row.subspan(b.start, b.size());
      const auto at = strategy == split_strategy::half_split ? locate_half_split(slice) : locate_max_demand(slice);
      t.bucket_peers[std::size_t{i} * m + j] = at ? b.start + static_cast<node_key>(*at) : i ^ (node_key{1} << j);
    }
  }
  detail::materialize_bucket_edges(t);
  return t;
}

// w(d) = sum_i D[i][(i + d) mod n] for every ring distance d in [1, n).
inline std::vector<double> ring_distance_scores(key_space ks, const demand_matrix& d) {
  const auto n = ks.size();
  std::vector<double> w(n, 0.0);
  for (std::uint32_t dist = 1; dist < n; ++dist) {
    double s = 0.0;
    for (node_key i = 0; i < n; ++i) s += d(i, (i + dist) & ks.mask());
    w[dist] = s;
  }
  return w;
}

// Coin selection: candidates by descending score (ties: smaller distance first);
// a candidate that is a multiple of an already chosen coin is filtered out since
// repetitions of the smaller coin already reach it. The ring (coin 1) is always
// present and does not count against the budget of m coins.
inline coin_set select_coins(key_space ks, const demand_matrix& d) {
  if (d.size() != ks.size())
    throw data_error("demand matrix size " + std::to_string(d.size()) + " does not match n = " +
                     std::to_string(ks.size()));
  const auto n = ks.size();
  const auto w = ring_distance_scores(ks, d);
  std::vector<std::uint32_t> candidates(n - 1);
  std::iota(candidates.begin(), candidates.end(), 1u);
  std::stable_sort(candidates.begin(), candidates.end(),
                   [&](std::uint32_t a, std::uint32_t b) { return w[a] > w[b]; });

  std::vector<std::uint32_t> chosen;
  for (auto c : candidates) {
    if (chosen.size() == ks.bits()) break;
    if (c == 1) continue;
    const bool redundant = std::any_of(chosen.begin(), chosen.end(), [c](std::uint32_t p) { return c % p == 0; });
    if (!redundant) chosen.push_back(c);
  }
  chosen.push_back(1);
  std::sort(chosen.begin(), chosen.end());
  return coin_set{std::move(chosen)};
}

inline topology select_permutations(key_space ks, const demand_matrix& d) {
  topology t{ks, algorithm::permutations, {}, {}, select_coins(ks, d)};
  const auto n = ks.size();
  t.out.assign(n, {});
  for (node_key i = 0; i < n; ++i) {
    auto& edges = t.out[i];
    for (auto c : t.coins.coins) edges.push_back((i + c) & ks.mask());
    std::sort(edges.begin(), edges.end());
  }
  return t;
}

inline topology build_topology(algorithm a, key_space ks, const demand_matrix& d) {
  switch (a) {
    case algorithm::chord: return select_chord(ks);
    case algorithm::bsb_half: return select_bsb(ks, d, split_strategy::half_split);
    case algorithm::bsb_max: return select_bsb(ks, d, split_strategy::max_demand);
    case algorithm::permutations: return select_permutations(ks, d);
  }
  throw invariant_error("unhandled algorithm");
}

// "# kind=<algorithm>, n=<n>" then one "src,dst" line per directed edge.
inline void write_edge_list(std::ostream& os, const topology& t) {
  os << "# kind=" << to_string(t.kind) << ", n=" << t.size() << '\n';
  for (node_key i = 0; i < t.size(); ++i)
    for (auto j : t.out[i]) os << i << ',' << j << '\n';
}

} // namespace bsb
