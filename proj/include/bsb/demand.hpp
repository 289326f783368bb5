#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "bsb/errors.hpp"
#include "bsb/keyspace.hpp"
#include "bsb/matrix.hpp"
#include "bsb/trace.hpp"

namespace bsb {

// D(i, j): traffic volume from i to j. Non-negative, zero diagonal, not necessarily symmetric.
using demand_matrix = square_matrix<double>;

inline void validate_demand(const demand_matrix& d, key_space ks) {
  if (d.size() != ks.size())
    throw data_error("demand matrix is " + std::to_string(d.size()) + "x" + std::to_string(d.size()) +
                     " but keyspace has " + std::to_string(ks.size()) + " nodes");
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d(i, i) != 0.0) throw data_error("demand diagonal entry " + std::to_string(i) + " is nonzero");
    for (double v : d.row(i))
      if (!(v >= 0.0) || !std::isfinite(v))
        throw data_error("demand row " + std::to_string(i) + " has a negative or non-finite entry");
  }
}

inline std::size_t count_self_loops(const std::vector<trace_row>& rows) {
  std::size_t n = 0;
  for (const auto& r : rows) n += r.src == r.dst;
  return n;
}

// Sums row sizes per ordered pair. Self rows are dropped (see count_self_loops).
inline demand_matrix build_demand(const std::vector<trace_row>& rows, key_space ks) {
  demand_matrix d(ks.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    if (!ks.contains(r.src) || !ks.contains(r.dst))
      throw data_error("trace row " + std::to_string(i) + " has identifier outside [0, " +
                       std::to_string(ks.size()) + ")");
    if (r.src == r.dst) continue;
    d(r.src, r.dst) += r.size;
  }
  return d;
}

} // namespace bsb
