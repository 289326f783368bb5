#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "bsb/csv.hpp"
#include "bsb/errors.hpp"
#include "bsb/keyspace.hpp"
#include "bsb/rng.hpp"

namespace bsb {

// One communication event. Labels are raw until remap_filter maps them into a keyspace.
struct trace_row {
  std::uint64_t src = 0;
  std::uint64_t dst = 0;
  std::optional<double> timestamp;
  double size = 1.0;

  friend bool operator==(const trace_row&, const trace_row&) = default;
};

enum class label_policy {
  automatic, // numeric when every label is a non-negative integer, interned otherwise
  numeric,
  intern,    // first-appearance order
};

// Column positions of a delimited trace. Timestamp and size columns are optional
// per line: a short line simply carries no timestamp / unit size.
struct trace_format {
  std::size_t src_col = 0;
  std::size_t dst_col = 1;
  std::optional<std::size_t> timestamp_col = 2;
  std::optional<std::size_t> size_col = 3;
  label_policy labels = label_policy::automatic;

  // "src,dst,ts,size" style; "_" skips a column. Accepts ts/time/timestamp and size/bytes.
  static trace_format from_columns(std::string_view spec) {
    trace_format f;
    f.timestamp_col.reset();
    f.size_col.reset();
    std::optional<std::size_t> src, dst;
    std::size_t col = 0;
    for (auto name : split_fields(spec)) {
      if (name == "src" || name == "source")
        src = col;
      else if (name == "dst" || name == "destination")
        dst = col;
      else if (name == "ts" || name == "time" || name == "timestamp")
        f.timestamp_col = col;
      else if (name == "size" || name == "bytes")
        f.size_col = col;
      else if (name != "_")
        throw config_error("unknown trace column '" + std::string(name) + "'");
      ++col;
    }
    if (!src || !dst) throw config_error("trace columns must name both src and dst");
    f.src_col = *src;
    f.dst_col = *dst;
    return f;
  }
};

struct parsed_trace {
  std::vector<trace_row> rows;
  std::vector<std::string> labels; // interned label names by id; empty for numeric labels
};

inline parsed_trace parse_trace(std::istream& is, const trace_format& fmt = {}) {
  if (!is) throw data_error("trace stream unreadable");

  struct raw_row {
    std::string src, dst;
    std::optional<double> ts;
    double size;
  };
  std::vector<raw_row> raw;
  std::string line;
  std::size_t lineno = 0;
  const auto where = [&] { return "trace line " + std::to_string(lineno) + ": "; };

  while (std::getline(is, line)) {
    ++lineno;
    const auto t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto fields = split_fields(t);
    if (fields.size() <= fmt.src_col || fields[fmt.src_col].empty())
      throw data_error(where() + "missing src column");
    if (fields.size() <= fmt.dst_col || fields[fmt.dst_col].empty())
      throw data_error(where() + "missing dst column");
    raw_row r{std::string(fields[fmt.src_col]), std::string(fields[fmt.dst_col]), std::nullopt, 1.0};
    if (fmt.timestamp_col && *fmt.timestamp_col < fields.size()) {
      auto v = parse_number<double>(fields[*fmt.timestamp_col]);
      if (!v || *v < 0) throw data_error(where() + "bad timestamp '" + std::string(fields[*fmt.timestamp_col]) + "'");
      r.ts = *v;
    }
    if (fmt.size_col && *fmt.size_col < fields.size()) {
      auto v = parse_number<double>(fields[*fmt.size_col]);
      if (!v || *v <= 0) throw data_error(where() + "bad size '" + std::string(fields[*fmt.size_col]) + "'");
      r.size = *v;
    }
    raw.push_back(std::move(r));
  }
  if (is.bad()) throw data_error("trace stream unreadable");

  bool numeric = fmt.labels == label_policy::numeric;
  if (fmt.labels == label_policy::automatic) {
    numeric = std::all_of(raw.begin(), raw.end(), [](const raw_row& r) {
      return parse_number<std::uint64_t>(r.src) && parse_number<std::uint64_t>(r.dst);
    });
  }

  parsed_trace out;
  out.rows.reserve(raw.size());
  std::unordered_map<std::string, std::uint64_t> ids;
  const auto intern = [&](const std::string& label) {
    auto [it, inserted] = ids.try_emplace(label, out.labels.size());
    if (inserted) out.labels.push_back(label);
    return it->second;
  };
  for (const auto& r : raw) {
    trace_row row{0, 0, r.ts, r.size};
    if (numeric) {
      auto s = parse_number<std::uint64_t>(r.src);
      auto d = parse_number<std::uint64_t>(r.dst);
      if (!s || !d) throw data_error("non-numeric label under numeric label policy: " + r.src + "," + r.dst);
      row.src = *s;
      row.dst = *d;
    } else {
      row.src = intern(r.src);
      row.dst = intern(r.dst);
    }
    out.rows.push_back(row);
  }
  return out;
}

struct remap_result {
  std::vector<trace_row> rows; // identifiers in [0, n_target)
  std::size_t distinct_labels = 0;
  std::size_t dropped_rows = 0;
};

// Random ID assignment followed by the key filter: every distinct label gets a
// distinct identifier from [0, #labels), then rows touching an identifier
// >= n_target are dropped. Labels are enumerated in first-appearance order so the
// assignment depends only on the trace and the seed.
inline remap_result remap_filter(const std::vector<trace_row>& rows, key_space target, std::uint64_t seed) {
  std::unordered_map<std::uint64_t, std::uint32_t> order;
  for (const auto& r : rows) {
    order.try_emplace(r.src, static_cast<std::uint32_t>(order.size()));
    order.try_emplace(r.dst, static_cast<std::uint32_t>(order.size()));
  }
  std::vector<std::uint64_t> ident(order.size());
  for (std::size_t i = 0; i < ident.size(); ++i) ident[i] = i;
  rng gen(seed);
  gen.shuffle(std::span<std::uint64_t>(ident));

  remap_result out;
  out.distinct_labels = order.size();
  out.rows.reserve(rows.size());
  for (const auto& r : rows) {
    const auto s = ident[order.at(r.src)];
    const auto d = ident[order.at(r.dst)];
    if (!target.contains(s) || !target.contains(d)) {
      ++out.dropped_rows;
      continue;
    }
    out.rows.push_back({s, d, r.timestamp, r.size});
  }
  return out;
}

struct time_chunk {
  std::size_t window = 0; // index of [t0 + window*w, t0 + (window+1)*w)
  std::vector<trace_row> rows;
};

// Half-open windows anchored at the first row's timestamp. Only non-empty windows
// are returned, in ascending window order.
inline std::vector<time_chunk> chunk_by_time(const std::vector<trace_row>& rows, double window) {
  if (!(window > 0)) throw config_error("chunk window must be positive");
  std::vector<time_chunk> out;
  if (rows.empty()) return out;
  if (!rows.front().timestamp) throw data_error("chunk_by_time: row 0 has no timestamp");
  const double t0 = *rows.front().timestamp;

  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& ts = rows[i].timestamp;
    if (!ts) throw data_error("chunk_by_time: row " + std::to_string(i) + " has no timestamp");
    if (*ts < t0) throw data_error("chunk_by_time: row " + std::to_string(i) + " precedes the first timestamp");
    const auto w = static_cast<std::size_t>(std::floor((*ts - t0) / window));
    auto it = std::lower_bound(out.begin(), out.end(), w,
                               [](const time_chunk& c, std::size_t v) { return c.window < v; });
    if (it == out.end() || it->window != w) it = out.insert(it, time_chunk{w, {}});
    it->rows.push_back(rows[i]);
  }
  return out;
}

} // namespace bsb
