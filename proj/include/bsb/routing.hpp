#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bsb/errors.hpp"
#include "bsb/keyspace.hpp"
#include "bsb/matrix.hpp"
#include "bsb/topology.hpp"

namespace bsb {

enum class mechanism { xor_greedy, coin_change, shortest_path };

constexpr std::string_view to_string(mechanism m) noexcept {
  switch (m) {
    case mechanism::xor_greedy: return "xor-greedy";
    case mechanism::coin_change: return "coin-change";
    case mechanism::shortest_path: return "shortest-path";
  }
  return "?";
}

inline mechanism parse_mechanism(std::string_view name) {
  for (auto m : {mechanism::xor_greedy, mechanism::coin_change, mechanism::shortest_path})
    if (to_string(m) == name) return m;
  throw config_error("unknown routing mechanism '" + std::string(name) + "'");
}

// The local routing each peer-selection algorithm is designed for.
constexpr mechanism native_mechanism(algorithm a) noexcept {
  return is_bucket_based(a) ? mechanism::xor_greedy : mechanism::coin_change;
}

struct path_length_matrix {
  key_space ks;
  mechanism mech = mechanism::xor_greedy;
  square_matrix<std::uint32_t> hops;
};

struct route {
  std::uint32_t hops = 0;
  std::vector<node_key> path; // src ... dst
};

namespace detail {

// Next hop from curr: the bucket peer sharing the longest prefix with dst, which
// must be strictly longer than curr's own. Equal prefixes resolve to the smaller key.
inline node_key xor_next_hop(const topology& t, node_key curr, node_key dst) {
  unsigned best = common_prefix_len(curr, dst, t.ks);
  std::optional<node_key> next;
  for (auto p : t.peers_of(curr)) {
    const unsigned len = common_prefix_len(p, dst, t.ks);
    if (len > best || (next && len == best && p < *next)) {
      best = len;
      next = p;
    }
  }
  if (!next)
    throw invariant_error("xor-greedy routing stalled at node " + std::to_string(curr) + " towards " +
                          std::to_string(dst));
  return *next;
}

inline void require_bucket_based(const topology& t) {
  if (!is_bucket_based(t.kind))
    throw std::invalid_argument("xor-greedy routing needs a bucket-based topology, got " +
                                std::string(to_string(t.kind)));
}

} // namespace detail

// Greedy forwarding over bucket peers only; the explicit ring edge some nodes carry
// is not part of the routing table.
inline route route_xor_greedy(const topology& t, node_key src, node_key dst) {
  detail::require_bucket_based(t);
  route r{0, {src}};
  for (node_key curr = src; curr != dst; ++r.hops) {
    curr = detail::xor_next_hop(t, curr, dst);
    r.path.push_back(curr);
  }
  return r;
}

inline std::uint32_t xor_greedy_hops(const topology& t, node_key src, node_key dst) {
  std::uint32_t hops = 0;
  for (node_key curr = src; curr != dst; ++hops) curr = detail::xor_next_hop(t, curr, dst);
  return hops;
}

inline path_length_matrix route_all_xor(const topology& t) {
  detail::require_bucket_based(t);
  path_length_matrix r{t.ks, mechanism::xor_greedy, square_matrix<std::uint32_t>(t.size())};
  for (node_key i = 0; i < t.size(); ++i)
    for (node_key j = 0; j < t.size(); ++j) r.hops(i, j) = xor_greedy_hops(t, i, j);
  return r;
}

// table[d]: fewest coins (repetition allowed) whose sum is d mod n. Breadth-first
// over residues, which is the coin-change DP for unit-cost coins.
inline std::vector<std::uint32_t> coin_route_table(const coin_set& coins, key_space ks) {
  if (!coins.contains(1)) throw std::invalid_argument("coin set must contain 1");
  constexpr auto unset = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> table(ks.size(), unset);
  std::vector<std::uint32_t> frontier{0};
  table[0] = 0;
  for (std::uint32_t level = 1; !frontier.empty(); ++level) {
    std::vector<std::uint32_t> next;
    for (auto r : frontier)
      for (auto c : coins.coins) {
        const auto s = (r + c) & ks.mask();
        if (table[s] == unset) {
          table[s] = level;
          next.push_back(s);
        }
      }
    frontier = std::move(next);
  }
  return table;
}

inline path_length_matrix route_all_coin(const topology& t) {
  if (t.kind != algorithm::permutations)
    throw std::invalid_argument("coin-change routing needs a permutations topology");
  const auto table = coin_route_table(t.coins, t.ks);
  path_length_matrix r{t.ks, mechanism::coin_change, square_matrix<std::uint32_t>(t.size())};
  for (node_key i = 0; i < t.size(); ++i)
    for (node_key j = 0; j < t.size(); ++j) r.hops(i, j) = table[ring_distance(i, j, t.ks)];
  return r;
}

// Hop distances from src over every out-edge (ring included).
inline std::vector<std::uint32_t> bfs_distances(const topology& t, node_key src) {
  constexpr auto unset = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> dist(t.size(), unset);
  std::vector<node_key> queue{src};
  queue.reserve(t.size());
  dist[src] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const auto u = queue[head];
    for (auto v : t.out[u])
      if (dist[v] == unset) {
        dist[v] = dist[u] + 1;
        queue.push_back(v);
      }
  }
  return dist;
}

// Benchmark only: assumes global knowledge of the overlay.
inline path_length_matrix shortest_path_matrix(const topology& t) {
  path_length_matrix r{t.ks, mechanism::shortest_path, square_matrix<std::uint32_t>(t.size())};
  for (node_key i = 0; i < t.size(); ++i) {
    const auto dist = bfs_distances(t, i);
    for (node_key j = 0; j < t.size(); ++j) {
      if (dist[j] == std::numeric_limits<std::uint32_t>::max())
        throw invariant_error("node " + std::to_string(j) + " unreachable from " + std::to_string(i));
      r.hops(i, j) = dist[j];
    }
  }
  return r;
}

inline path_length_matrix route_all(const topology& t, mechanism m) {
  switch (m) {
    case mechanism::xor_greedy: return route_all_xor(t);
    case mechanism::coin_change: return route_all_coin(t);
    case mechanism::shortest_path: return shortest_path_matrix(t);
  }
  throw invariant_error("unhandled mechanism");
}

} // namespace bsb
