#include "bsbsim/config.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <zlib.h>

#include "bsb/csv.hpp"
#include "bsb/errors.hpp"
#include "bsb/keyspace.hpp"

namespace bsbsim {

using bsb::config_error;

config_map read_config(std::istream& is) {
  config_map m;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto t = bsb::trim(line);
    if (t.empty()) continue;
    const auto eq = t.find('=');
    if (eq == std::string_view::npos)
      throw config_error("config line " + std::to_string(lineno) + ": expected key = value");
    const std::string key(bsb::trim(t.substr(0, eq)));
    if (key.empty()) throw config_error("config line " + std::to_string(lineno) + ": empty key");
    m[key] = std::string(bsb::trim(t.substr(eq + 1)));
  }
  return m;
}

config_map read_config_file(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw config_error("cannot read config file " + path.string());
  return read_config(is);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  for (auto f : bsb::split_fields(s))
    if (!f.empty()) out.emplace_back(f);
  return out;
}

std::vector<std::uint64_t> parse_seeds(const std::string& s) {
  std::vector<std::uint64_t> out;
  for (const auto& item : split_list(s)) {
    const auto dash = item.find('-', 1);
    if (dash == std::string::npos) {
      auto v = bsb::parse_number<std::uint64_t>(item);
      if (!v) throw config_error("seeds: bad value '" + item + "'");
      out.push_back(*v);
      continue;
    }
    auto lo = bsb::parse_number<std::uint64_t>(item.substr(0, dash));
    auto hi = bsb::parse_number<std::uint64_t>(item.substr(dash + 1));
    if (!lo || !hi || *lo > *hi) throw config_error("seeds: bad range '" + item + "'");
    for (auto v = *lo; v <= *hi; ++v) out.push_back(v);
  }
  return out;
}

namespace {

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw config_error(key + ": expected true/false, got '" + v + "'");
}

template <typename T>
T parse_field(const std::string& key, const std::string& v) {
  auto x = bsb::parse_number<T>(v);
  if (!x) throw config_error(key + ": bad value '" + v + "'");
  return *x;
}

} // namespace

experiment_config experiment_config::from_map(const config_map& m) {
  static const std::set<std::string> known{"dataset", "zipf.alpha", "zipf.rows", "n",       "seeds",  "algorithms",
                                           "mechanisms", "window", "columns",   "out",     "plots", "timings"};
  for (const auto& [k, v] : m)
    if (!known.count(k)) throw config_error("unknown config key '" + k + "'");

  experiment_config c;
  const auto get = [&](const char* key) -> const std::string* {
    auto it = m.find(key);
    return it == m.end() ? nullptr : &it->second;
  };

  if (auto v = get("dataset")) c.datasets = split_list(*v);
  if (c.datasets.empty()) throw config_error("dataset: at least one trace path or 'zipf' required");
  if (auto v = get("zipf.alpha")) {
    c.zipf_alphas.clear();
    for (const auto& a : split_list(*v)) {
      const auto alpha = parse_field<double>("zipf.alpha", a);
      if (!(alpha > 1.0)) throw config_error("zipf.alpha: values must be > 1, got " + a);
      c.zipf_alphas.push_back(alpha);
    }
    if (c.zipf_alphas.empty()) throw config_error("zipf.alpha: empty list");
  }
  if (auto v = get("zipf.rows")) c.zipf_rows = parse_field<std::uint64_t>("zipf.rows", *v);
  if (auto v = get("n")) {
    const auto n = parse_field<std::uint64_t>("n", *v);
    if (n < 2 || (n & (n - 1)) != 0 || n > (1u << bsb::key_space::max_bits))
      throw config_error("n: must be a power of two in [2, 2^24], got " + *v);
    c.n = static_cast<std::uint32_t>(n);
  }
  if (auto v = get("seeds")) c.seeds = parse_seeds(*v);
  if (c.seeds.empty()) throw config_error("seeds: at least one seed required");
  if (auto v = get("algorithms")) {
    c.algorithms.clear();
    for (const auto& a : split_list(*v)) {
      try {
        c.algorithms.push_back(bsb::parse_algorithm(a));
      } catch (const config_error& e) {
        throw config_error(std::string("algorithms: ") + e.what());
      }
    }
    if (c.algorithms.empty()) throw config_error("algorithms: empty list");
  }
  if (auto v = get("mechanisms")) {
    for (const auto& mech : split_list(*v)) {
      if (mech == "shortest-path")
        c.shortest_path = true;
      else if (mech != "native")
        throw config_error("mechanisms: expected native and/or shortest-path, got '" + mech + "'");
    }
  }
  if (auto v = get("window")) {
    c.window = parse_field<double>("window", *v);
    if (c.window < 0) throw config_error("window: must be >= 0");
  }
  if (auto v = get("columns")) {
    c.columns = *v;
    (void)bsb::trace_format::from_columns(c.columns);
  }
  if (auto v = get("out")) c.out = *v;
  if (auto v = get("plots")) c.plots = parse_bool("plots", *v);
  if (auto v = get("timings")) c.timings = parse_bool("timings", *v);
  return c;
}

std::string experiment_config::canonical() const {
  std::ostringstream os;
  const auto join = [&](const auto& items, auto fmt) {
    std::string s;
    for (const auto& x : items) {
      if (!s.empty()) s += ',';
      s += fmt(x);
    }
    return s;
  };
  os << "algorithms=" << join(algorithms, [](bsb::algorithm a) { return std::string(bsb::to_string(a)); }) << '\n'
     << "columns=" << columns << '\n'
     << "dataset=" << join(datasets, [](const std::string& s) { return s; }) << '\n'
     << "mechanisms=" << (shortest_path ? "native,shortest-path" : "native") << '\n'
     << "n=" << n << '\n'
     << "seeds=" << join(seeds, [](std::uint64_t s) { return std::to_string(s); }) << '\n'
     << "timings=" << (timings ? "true" : "false") << '\n'
     << "window=" << bsb::format_number(window) << '\n'
     << "zipf.alpha=" << join(zipf_alphas, [](double a) { return bsb::format_number(a); }) << '\n'
     << "zipf.rows=" << zipf_rows << '\n';
  return os.str();
}

std::string experiment_config::hash() const { return crc32_hex(canonical()); }

std::string crc32_hex(const std::string& data) {
  const auto crc = crc32(0L, reinterpret_cast<const Bytef*>(data.data()), static_cast<uInt>(data.size()));
  char buf[9];
  std::snprintf(buf, sizeof buf, "%08lx", static_cast<unsigned long>(crc));
  return buf;
}

} // namespace bsbsim
