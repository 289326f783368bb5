#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bsb/demand.hpp"
#include "bsb/errors.hpp"
#include "bsb/routing.hpp"
#include "bsb/topology.hpp"

namespace bsb {

// Sum over ordered pairs of hops(i, j) * D(i, j), row-major order.
inline double total_cost(const path_length_matrix& r, const demand_matrix& d) {
  if (r.hops.size() != d.size())
    throw data_error("path length matrix is " + std::to_string(r.hops.size()) + " nodes, demand is " +
                     std::to_string(d.size()));
  double sum = 0.0;
  for (std::size_t i = 0; i < d.size(); ++i)
    for (std::size_t j = 0; j < d.size(); ++j)
      if (d(i, j) != 0.0) sum += r.hops(i, j) * d(i, j);
  return sum;
}

// Same value as total_cost(route_all(t, m), d), but only pairs with demand are routed.
inline double routed_cost(const topology& t, mechanism m, const demand_matrix& d) {
  if (d.size() != t.size())
    throw data_error("demand matrix size " + std::to_string(d.size()) + " does not match topology n = " +
                     std::to_string(t.size()));
  const auto n = t.size();
  double sum = 0.0;
  switch (m) {
    case mechanism::xor_greedy:
      detail::require_bucket_based(t);
      for (node_key i = 0; i < n; ++i)
        for (node_key j = 0; j < n; ++j)
          if (d(i, j) != 0.0) sum += xor_greedy_hops(t, i, j) * d(i, j);
      return sum;
    case mechanism::coin_change: {
      if (t.kind != algorithm::permutations)
        throw std::invalid_argument("coin-change routing needs a permutations topology");
      const auto table = coin_route_table(t.coins, t.ks);
      for (node_key i = 0; i < n; ++i)
        for (node_key j = 0; j < n; ++j)
          if (d(i, j) != 0.0) sum += table[ring_distance(i, j, t.ks)] * d(i, j);
      return sum;
    }
    case mechanism::shortest_path:
      for (node_key i = 0; i < n; ++i) {
        const auto row = d.row(i);
        if (std::all_of(row.begin(), row.end(), [](double v) { return v == 0.0; })) continue;
        const auto dist = bfs_distances(t, i);
        for (node_key j = 0; j < n; ++j)
          if (row[j] != 0.0) {
            if (dist[j] == std::numeric_limits<std::uint32_t>::max())
              throw invariant_error("node " + std::to_string(j) + " unreachable from " + std::to_string(i));
            sum += dist[j] * row[j];
          }
      }
      return sum;
  }
  throw invariant_error("unhandled mechanism");
}

struct cost_report {
  algorithm alg = algorithm::chord;
  mechanism mech = mechanism::xor_greedy;
  std::uint32_t n = 0;
  double total_cost = 0.0;
  std::optional<double> ratio_vs_chord; // empty when Chord's cost is zero
  double wall_time_ms = 0.0;             // selection + routing
};

enum class routing_class {
  native,        // each algorithm under its own local routing
  shortest_path, // lower-bound benchmark, compared only within this class
};

// Builds every requested topology on d, routes it and reports cost and the ratio
// against Chord under the same routing class.
inline std::vector<cost_report> compare(const demand_matrix& d, key_space ks, std::span<const algorithm> algs,
                                        routing_class cls = routing_class::native) {
  validate_demand(d, ks);
  using clock = std::chrono::steady_clock;
  const auto mech_for = [cls](algorithm a) {
    return cls == routing_class::native ? native_mechanism(a) : mechanism::shortest_path;
  };
  const auto evaluate = [&](algorithm a) {
    const auto t0 = clock::now();
    const auto topo = build_topology(a, ks, d);
    const double cost = routed_cost(topo, mech_for(a), d);
    const std::chrono::duration<double, std::milli> elapsed = clock::now() - t0;
    return cost_report{a, mech_for(a), ks.size(), cost, std::nullopt, elapsed.count()};
  };

  std::optional<cost_report> chord;
  std::vector<cost_report> out;
  for (auto a : algs) {
    out.push_back(evaluate(a));
    if (a == algorithm::chord && !chord) chord = out.back();
  }
  if (!chord) chord = evaluate(algorithm::chord);
  for (auto& r : out)
    if (chord->total_cost > 0) r.ratio_vs_chord = r.total_cost / chord->total_cost;
  return out;
}

} // namespace bsb
