#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <map>
#include <string>
#include <vector>

#include "bsb/topology.hpp"
#include "bsb/trace.hpp"

namespace bsbsim {

// Flat "key = value" configuration; '#' starts a comment.
using config_map = std::map<std::string, std::string>;

config_map read_config(std::istream& is);
config_map read_config_file(const std::filesystem::path& path);

std::vector<std::string> split_list(const std::string& s);
// "1,2,5-8" -> {1, 2, 5, 6, 7, 8}
std::vector<std::uint64_t> parse_seeds(const std::string& s);

struct experiment_config {
  std::vector<std::string> datasets; // trace paths, or "zipf"
  std::vector<double> zipf_alphas{1.1, 1.5, 2.0, 3.0, 4.0};
  std::uint64_t zipf_rows = 100000;
  std::uint32_t n = 64;
  std::vector<std::uint64_t> seeds{1};
  std::vector<bsb::algorithm> algorithms{std::begin(bsb::all_algorithms), std::end(bsb::all_algorithms)};
  bool shortest_path = false; // also report the shortest-path benchmark class
  double window = 0;          // seconds; 0 keeps each trace whole
  std::string columns = "src,dst,ts,size";
  std::filesystem::path out = "results";
  bool plots = false;
  bool timings = false;

  static experiment_config from_map(const config_map& m);
  // Canonical "key=value" lines of every resolved field, the input of hash().
  std::string canonical() const;
  std::string hash() const;
};

std::string crc32_hex(const std::string& data);

} // namespace bsbsim
