#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <span>
#include <vector>

#include "bsb/demand.hpp"
#include "bsb/errors.hpp"
#include "bsb/topology.hpp"

namespace bsb {

struct bench_report {
  algorithm alg = algorithm::chord;
  std::uint32_t n = 0;
  std::vector<double> times_ms; // one entry per repetition, in run order
  double median_ms = 0.0;
  double min_ms = 0.0;
};

inline double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const auto mid = v.size() / 2;
  return v.size() % 2 ? v[mid] : (v[mid - 1] + v[mid]) / 2;
}

// Times topology construction only. Repetitions of one algorithm run back to back.
inline std::vector<bench_report> bench_selection(const demand_matrix& d, key_space ks, std::span<const algorithm> algs,
                                                 unsigned repetitions) {
  if (repetitions < 3) throw config_error("bench needs at least 3 repetitions");
  validate_demand(d, ks);
  using clock = std::chrono::steady_clock;
  std::vector<bench_report> out;
  for (auto a : algs) {
    bench_report r{a, ks.size(), {}, 0.0, 0.0};
    std::size_t sink = 0;
    for (unsigned k = 0; k < repetitions; ++k) {
      const auto t0 = clock::now();
      const auto topo = build_topology(a, ks, d);
      const std::chrono::duration<double, std::milli> elapsed = clock::now() - t0;
      sink += topo.out.size();
      r.times_ms.push_back(elapsed.count());
    }
    if (sink == 0) throw invariant_error("empty topology");
    r.median_ms = median_of(r.times_ms);
    r.min_ms = *std::min_element(r.times_ms.begin(), r.times_ms.end());
    out.push_back(std::move(r));
  }
  return out;
}

} // namespace bsb
