#pragma once

#include <charconv>
#include <cmath>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <system_error>
#include <type_traits>
#include <vector>

#include "bsb/errors.hpp"
#include "bsb/matrix.hpp"

namespace bsb {

// Shortest round-trip decimal form; identical bytes on every conforming platform.
inline std::string format_number(double v) {
  if (v == 0.0) return "0";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

inline std::string format_number(std::uint64_t v) { return std::to_string(v); }

// Fixed-precision form for report columns that humans read.
inline std::string format_fixed(double v, int precision) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, precision);
  return std::string(buf, res.ptr);
}

inline std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

// Splits on commas when the line has any, otherwise on runs of whitespace.
inline std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  if (line.find(',') != std::string_view::npos) {
    std::size_t pos = 0;
    for (;;) {
      const auto comma = line.find(',', pos);
      out.push_back(trim(line.substr(pos, comma == std::string_view::npos ? comma : comma - pos)));
      if (comma == std::string_view::npos) break;
      pos = comma + 1;
    }
    return out;
  }
  std::size_t pos = 0;
  while (pos < line.size()) {
    pos = line.find_first_not_of(" \t\r", pos);
    if (pos == std::string_view::npos) break;
    auto end = line.find_first_of(" \t\r", pos);
    if (end == std::string_view::npos) end = line.size();
    out.push_back(line.substr(pos, end - pos));
    pos = end;
  }
  return out;
}

template <typename T>
std::optional<T> parse_number(std::string_view s) {
  T v{};
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  if (s.empty()) return std::nullopt;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  if constexpr (std::is_floating_point_v<T>) {
    if (!std::isfinite(v)) return std::nullopt;
  }
  return v;
}

// n header-less lines of n comma-separated numbers.
template <typename T>
void write_dense_csv(std::ostream& os, const square_matrix<T>& m) {
  std::string line;
  for (std::size_t i = 0; i < m.size(); ++i) {
    line.clear();
    for (std::size_t j = 0; j < m.size(); ++j) {
      if (j) line += ',';
      if constexpr (std::is_floating_point_v<T>)
        line += format_number(static_cast<double>(m(i, j)));
      else
        line += format_number(static_cast<std::uint64_t>(m(i, j)));
    }
    line += '\n';
    os << line;
  }
}

template <typename T>
square_matrix<T> read_dense_csv(std::istream& is) {
  std::vector<std::vector<T>> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    std::vector<T> row;
    for (auto f : split_fields(t)) {
      auto v = parse_number<T>(f);
      if (!v) throw data_error("line " + std::to_string(lineno) + ": bad matrix entry '" + std::string(f) + "'");
      row.push_back(*v);
    }
    rows.push_back(std::move(row));
  }
  if (is.bad()) throw data_error("matrix stream unreadable");
  square_matrix<T> m(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.size())
      throw data_error("matrix row " + std::to_string(i) + " has " + std::to_string(rows[i].size()) +
                       " entries, expected " + std::to_string(rows.size()));
    for (std::size_t j = 0; j < rows.size(); ++j) m(i, j) = rows[i][j];
  }
  return m;
}

} // namespace bsb
