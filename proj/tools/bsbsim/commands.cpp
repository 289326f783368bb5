#include "bsbsim/commands.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "bsb/bsb.hpp"
#include "bsbsim/svg.hpp"

namespace bsbsim {

namespace fs = std::filesystem;
using bsb::config_error;
using bsb::data_error;

namespace {

constexpr const char* results_header = "dataset,algorithm,mechanism,n,total_cost,ratio_vs_chord,wall_time_ms";
constexpr const char* ntc_header =
    "dataset,n,seed,rows,original_bytes,shuffled_bytes,random_bytes,ntc,compressor";
constexpr const char* bench_header = "algorithm,n,repetitions,median_ms,min_ms";

std::string provenance_line(const std::string& hash) { return "# bsbsim " BSB_VERSION " config=" + hash + "\n"; }

std::vector<bsb::trace_row> load_trace(const fs::path& path, const std::string& columns) {
  std::ifstream is(path);
  if (!is) throw data_error("cannot open trace file " + path.string());
  return bsb::parse_trace(is, bsb::trace_format::from_columns(columns)).rows;
}

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream os(path, std::ios::binary);
  if (!os) throw data_error("cannot write " + path.string());
  os << text;
  if (!os) throw data_error("write failed for " + path.string());
}

// Creates the CSV with provenance and header, or appends the rows to an existing one.
void append_csv(const fs::path& path, const std::string& hash, const char* header, const std::string& rows) {
  const bool fresh = !fs::exists(path) || fs::file_size(path) == 0;
  if (fresh) {
    write_text(path, provenance_line(hash) + header + "\n" + rows);
    return;
  }
  std::ofstream os(path, std::ios::binary | std::ios::app);
  if (!os) throw data_error("cannot append to " + path.string());
  os << rows;
}

std::string dataset_stem(const std::string& path) {
  auto stem = fs::path(path).stem().string();
  return stem.empty() ? path : stem;
}

std::string optional_number(const std::optional<double>& v) { return v ? bsb::format_number(*v) : std::string(); }

// --- demand sources shared by topo / route ---------------------------------

struct demand_source {
  std::string demand_csv;
  std::string dataset;
  std::string columns = "src,dst,ts,size";
  std::optional<double> zipf_alpha;
  std::uint64_t rows = 100000;
  std::uint64_t n = 64;
  std::uint64_t seed = 1;

  void attach(CLI::App* app) {
    app->add_option("--demand", demand_csv, "Dense demand matrix CSV (n inferred)");
    app->add_option("--dataset", dataset, "Trace file, remapped to n nodes with --seed");
    app->add_option("--zipf-alpha", zipf_alpha, "Generate a Zipf trace with this alpha instead");
    app->add_option("--rows", rows, "Zipf trace rows")->capture_default_str();
    app->add_option("--n", n, "Node count (power of two)")->capture_default_str();
    app->add_option("--seed", seed, "ID-remap / generation seed")->capture_default_str();
    app->add_option("--columns", columns, "Trace column order, '_' skips")->capture_default_str();
  }

  std::pair<bsb::key_space, bsb::demand_matrix> load(std::ostream& err) const {
    const int given = !demand_csv.empty() + !dataset.empty() + zipf_alpha.has_value();
    if (given != 1) throw config_error("exactly one of --demand, --dataset, --zipf-alpha is required");
    if (!demand_csv.empty()) {
      std::ifstream is(demand_csv);
      if (!is) throw data_error("cannot open demand file " + demand_csv);
      auto d = bsb::read_dense_csv<double>(is);
      const auto ks = bsb::key_space::from_size(d.size());
      bsb::validate_demand(d, ks);
      return {ks, std::move(d)};
    }
    const auto ks = bsb::key_space::from_size(n);
    std::vector<bsb::trace_row> trace;
    if (zipf_alpha) {
      trace = bsb::gen_zipf({*zipf_alpha, rows, ks.size(), seed});
    } else {
      auto remapped = bsb::remap_filter(load_trace(dataset, columns), ks, seed);
      if (remapped.rows.empty()) err << "warning: no rows survive the key filter at n=" << n << "\n";
      trace = std::move(remapped.rows);
    }
    if (auto self = bsb::count_self_loops(trace)) err << "warning: dropped " << self << " self-loop rows\n";
    return {ks, bsb::build_demand(trace, ks)};
  }
};

// --- run ---------------------------------------------------------------------

struct result_row {
  std::string group;  // dataset label without seed/chunk, for plots
  std::size_t window; // chunk index
  std::string dataset;
  bsb::cost_report report;
};

std::string format_result(const result_row& r, bool timings) {
  std::string line = r.dataset;
  line += ',';
  line += bsb::to_string(r.report.alg);
  line += ',';
  line += bsb::to_string(r.report.mech);
  line += ',' + std::to_string(r.report.n);
  line += ',' + bsb::format_number(r.report.total_cost);
  line += ',' + optional_number(r.report.ratio_vs_chord);
  line += ',' + (timings ? bsb::format_fixed(r.report.wall_time_ms, 3) : std::string());
  line += '\n';
  return line;
}

void write_plots(const experiment_config& cfg, const std::vector<result_row>& rows) {
  std::vector<std::string> groups;
  std::map<std::string, std::map<std::string, std::vector<double>>> ratios;
  for (const auto& r : rows) {
    if (r.report.alg == bsb::algorithm::chord || r.report.mech == bsb::mechanism::shortest_path ||
        !r.report.ratio_vs_chord)
      continue;
    if (std::find(groups.begin(), groups.end(), r.group) == groups.end()) groups.push_back(r.group);
    ratios[r.group][std::string(bsb::to_string(r.report.alg))].push_back(*r.report.ratio_vs_chord);
  }
  std::vector<box_group> boxes;
  for (const auto& g : groups) {
    box_group bg{g, {}};
    for (auto a : cfg.algorithms) {
      const std::string name(bsb::to_string(a));
      if (auto it = ratios[g].find(name); it != ratios[g].end()) bg.series.push_back({name, it->second});
    }
    boxes.push_back(std::move(bg));
  }
  write_text(cfg.out / "ratios.svg",
             box_plot_svg("Communication cost ratio vs Chord (n=" + std::to_string(cfg.n) + ")", "cost / chord cost",
                          boxes));

  // One line plot per dataset that was split into more than one time window.
  for (const auto& g : groups) {
    std::set<std::size_t> windows;
    for (const auto& r : rows)
      if (r.group == g) windows.insert(r.window);
    if (windows.size() < 2) continue;
    const std::vector<std::size_t> xs(windows.begin(), windows.end());
    std::vector<plot_series> series;
    for (auto a : cfg.algorithms) {
      if (a == bsb::algorithm::chord) continue;
      plot_series s{std::string(bsb::to_string(a)), {}};
      for (auto w : xs) {
        double sum = 0;
        int count = 0;
        for (const auto& r : rows)
          if (r.group == g && r.window == w && r.report.alg == a && r.report.mech != bsb::mechanism::shortest_path &&
              r.report.ratio_vs_chord) {
            sum += *r.report.ratio_vs_chord;
            ++count;
          }
        s.values.push_back(count ? sum / count : 1.0);
      }
      series.push_back(std::move(s));
    }
    write_text(cfg.out / (g + "_chunks.svg"),
               line_plot_svg(g + ": cost ratio per time window", "window", "mean cost / chord cost", series));
  }
}

} // namespace

std::string run_experiment(const experiment_config& cfg, std::ostream& log) {
  const auto ks = bsb::key_space::from_size(cfg.n);
  std::vector<std::uint64_t> seeds = cfg.seeds;
  std::sort(seeds.begin(), seeds.end());
  seeds.erase(std::unique(seeds.begin(), seeds.end()), seeds.end());

  std::vector<result_row> results;
  const auto evaluate = [&](const std::string& group, std::uint64_t seed, std::size_t window,
                            const std::vector<bsb::trace_row>& rows) {
    if (auto self = bsb::count_self_loops(rows))
      log << "warning: " << group << " seed " << seed << ": dropped " << self << " self-loop rows\n";
    const auto d = bsb::build_demand(rows, ks);
    const std::string label = group + ";seed=" + std::to_string(seed) + ";chunk=" + std::to_string(window);
    for (const auto& r : bsb::compare(d, ks, cfg.algorithms)) results.push_back({group, window, label, r});
    if (cfg.shortest_path)
      for (const auto& r : bsb::compare(d, ks, cfg.algorithms, bsb::routing_class::shortest_path))
        results.push_back({group, window, label, r});
  };

  for (const auto& dataset : cfg.datasets) {
    if (dataset == "zipf") {
      for (double alpha : cfg.zipf_alphas) {
        const std::string group = "zipf-a" + bsb::format_number(alpha);
        for (auto seed : seeds) evaluate(group, seed, 0, bsb::gen_zipf({alpha, cfg.zipf_rows, cfg.n, seed}));
      }
      continue;
    }
    const auto trace = load_trace(dataset, cfg.columns);
    const auto group = dataset_stem(dataset);
    for (auto seed : seeds) {
      auto remapped = bsb::remap_filter(trace, ks, seed);
      if (remapped.rows.empty())
        log << "warning: " << group << " seed " << seed << ": no rows survive the key filter\n";
      if (cfg.window > 0) {
        for (const auto& chunk : bsb::chunk_by_time(remapped.rows, cfg.window))
          evaluate(group, seed, chunk.window, chunk.rows);
      } else {
        evaluate(group, seed, 0, remapped.rows);
      }
    }
  }

  std::string csv = provenance_line(cfg.hash()) + results_header + "\n";
  for (const auto& r : results) csv += format_result(r, cfg.timings);
  write_text(cfg.out / "results.csv", csv);
  if (cfg.plots) write_plots(cfg, results);
  return csv;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Demand-aware peer selection simulator: Chord, BSB half-split / max-demand, Permutations"};
  app.require_subcommand(1);
  app.set_version_flag("--version", BSB_VERSION);

  // run
  auto* run = app.add_subcommand("run", "Run an experiment and write results.csv (+ SVG plots)");
  std::string run_config;
  std::map<std::string, std::string> overrides;
  run->add_option("--config", run_config, "Flat key = value config file");
  const std::pair<const char*, const char*> run_keys[] = {
      {"dataset", "Trace paths and/or 'zipf' (comma separated)"},
      {"zipf.alpha", "Zipf alphas for the 'zipf' dataset"},
      {"zipf.rows", "Rows per Zipf trace"},
      {"n", "Node count after the key filter (power of two)"},
      {"seeds", "ID-remap / generation seeds, e.g. 0-9"},
      {"algorithms", "chord,bsb-half,bsb-max,permutations"},
      {"mechanisms", "native and/or shortest-path"},
      {"window", "Time window in seconds (0 = whole trace)"},
      {"columns", "Trace column order, e.g. ts,src,dst"},
      {"out", "Output directory"},
      {"plots", "Write SVG plots (true/false)"},
      {"timings", "Fill the wall_time_ms column (true/false)"},
  };
  for (const auto& [key, help] : run_keys) run->add_option(std::string("--") + key, overrides[key], help);

  // ntc
  auto* ntc_cmd = app.add_subcommand("ntc", "Non-temporal complexity of a trace via compression");
  std::string ntc_dataset, ntc_columns = "src,dst,ts,size", ntc_out, ntc_keep;
  std::optional<double> ntc_alpha;
  std::uint64_t ntc_rows = 100000, ntc_n = 64, ntc_seed = 1;
  ntc_cmd->add_option("--dataset", ntc_dataset, "Trace file");
  ntc_cmd->add_option("--zipf-alpha", ntc_alpha, "Use a generated Zipf trace instead");
  ntc_cmd->add_option("--rows", ntc_rows, "Zipf trace rows")->capture_default_str();
  ntc_cmd->add_option("--n", ntc_n, "Node count after the key filter")->capture_default_str();
  ntc_cmd->add_option("--seed", ntc_seed, "Remap / shuffle seed")->capture_default_str();
  ntc_cmd->add_option("--columns", ntc_columns, "Trace column order")->capture_default_str();
  ntc_cmd->add_option("--out", ntc_out, "CSV to create or append to (default: stdout)");
  ntc_cmd->add_option("--keep-artifacts", ntc_keep, "Directory for the three compressed files");

  // bench
  auto* bench_cmd = app.add_subcommand("bench", "Time topology construction");
  std::string bench_sizes = "64,256,1024", bench_algs = "chord,bsb-half,bsb-max,permutations", bench_out;
  unsigned bench_reps = 5;
  std::uint64_t bench_seed = 1;
  double bench_density = 1.0;
  bench_cmd->add_option("--n", bench_sizes, "Node counts")->capture_default_str();
  bench_cmd->add_option("--algorithms", bench_algs, "Algorithms")->capture_default_str();
  bench_cmd->add_option("--repetitions", bench_reps, "Runs per algorithm and size (>= 3)")->capture_default_str();
  bench_cmd->add_option("--seed", bench_seed, "Random demand seed")->capture_default_str();
  bench_cmd->add_option("--density", bench_density, "Fraction of nonzero demand entries")->capture_default_str();
  bench_cmd->add_option("--out", bench_out, "CSV to create or append to (default: stdout)");

  // gen-zipf
  auto* gen = app.add_subcommand("gen-zipf", "Write a synthetic Zipf trace");
  double gen_alpha = 2.0, gen_duration = 0;
  std::uint64_t gen_rows = 100000, gen_n = 64, gen_seed = 1;
  std::string gen_out;
  gen->add_option("--alpha", gen_alpha, "Skew, > 1")->required();
  gen->add_option("--rows", gen_rows, "Rows")->capture_default_str();
  gen->add_option("--n", gen_n, "Node count")->capture_default_str();
  gen->add_option("--seed", gen_seed, "Seed")->capture_default_str();
  gen->add_option("--duration", gen_duration, "Spread timestamps evenly over this many seconds (0: none)");
  gen->add_option("--out", gen_out, "Output file (default: stdout)");

  // topo / route
  auto* topo_cmd = app.add_subcommand("topo", "Dump a topology as an edge list");
  auto* route_cmd = app.add_subcommand("route", "Dump a path-length matrix");
  demand_source topo_src, route_src;
  std::string topo_alg, topo_out, route_alg, route_mech = "native", route_out;
  topo_src.attach(topo_cmd);
  topo_cmd->add_option("--algorithm", topo_alg, "chord|bsb-half|bsb-max|permutations")->required();
  topo_cmd->add_option("--out", topo_out, "Output file (default: stdout)");
  route_src.attach(route_cmd);
  route_cmd->add_option("--algorithm", route_alg, "chord|bsb-half|bsb-max|permutations")->required();
  route_cmd->add_option("--mechanism", route_mech, "native|xor-greedy|coin-change|shortest-path")
      ->capture_default_str();
  route_cmd->add_option("--out", route_out, "Output file (default: stdout)");

  try {
    app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_code::ok : exit_code::config_failure;
  }

  const auto emit = [&](const std::string& path, const std::string& text) {
    if (path.empty())
      out << text;
    else
      write_text(path, text);
  };

  try {
    if (*run) {
      config_map m = run_config.empty() ? config_map{} : read_config_file(run_config);
      for (const auto& [key, value] : overrides)
        if (!value.empty()) m[key] = value;
      const auto cfg = experiment_config::from_map(m);
      run_experiment(cfg, err);
      out << "wrote " << (cfg.out / "results.csv").string() << "\n";
    } else if (*ntc_cmd) {
      if (ntc_dataset.empty() == !ntc_alpha) throw config_error("ntc: exactly one of --dataset, --zipf-alpha");
      const auto ks = bsb::key_space::from_size(ntc_n);
      std::vector<bsb::trace_row> rows;
      std::string label;
      if (ntc_alpha) {
        rows = bsb::gen_zipf({*ntc_alpha, ntc_rows, ks.size(), ntc_seed});
        label = "zipf-a" + bsb::format_number(*ntc_alpha);
      } else {
        rows = bsb::remap_filter(load_trace(ntc_dataset, ntc_columns), ks, ntc_seed).rows;
        label = dataset_stem(ntc_dataset);
      }
      const auto r = bsb::ntc(rows, ks, ntc_seed);
      if (!ntc_keep.empty()) {
        const auto files = bsb::make_ntc_files(rows, ks, ntc_seed);
        const auto keep = [&](const char* which, const std::string& text) {
          const auto bytes = bsb::deflate_bytes(text);
          write_text(fs::path(ntc_keep) / (label + "." + which + ".deflate"), std::string(bytes.begin(), bytes.end()));
        };
        keep("original", files.original);
        keep("shuffled", files.shuffled);
        keep("random", files.random);
      }
      const std::string row = label + "," + std::to_string(ks.size()) + "," + std::to_string(r.seed) + "," +
                              std::to_string(r.rows) + "," + std::to_string(r.original_bytes) + "," +
                              std::to_string(r.shuffled_bytes) + "," + std::to_string(r.random_bytes) + "," +
                              bsb::format_number(r.ntc) + "," + std::string(bsb::ntc_compressor) + "\n";
      const auto hash = crc32_hex("ntc dataset=" + (ntc_alpha ? label : ntc_dataset) + " n=" + std::to_string(ntc_n) +
                                  " rows=" + std::to_string(ntc_rows) + " columns=" + ntc_columns);
      if (ntc_out.empty())
        out << provenance_line(hash) << ntc_header << "\n" << row;
      else
        append_csv(ntc_out, hash, ntc_header, row);
    } else if (*bench_cmd) {
      std::vector<bsb::algorithm> algs;
      for (const auto& a : split_list(bench_algs)) algs.push_back(bsb::parse_algorithm(a));
      if (bench_reps < 3) throw config_error("bench: --repetitions must be >= 3");
      std::string rows;
      for (const auto& size : split_list(bench_sizes)) {
        auto n = bsb::parse_number<std::uint64_t>(size);
        if (!n) throw config_error("bench: bad --n entry '" + size + "'");
        const auto ks = bsb::key_space::from_size(*n);
        bsb::rng g(bench_seed);
        bsb::demand_matrix d(ks.size());
        for (std::uint32_t i = 0; i < ks.size(); ++i)
          for (std::uint32_t j = 0; j < ks.size(); ++j)
            if (i != j && g.unit() < bench_density) d(i, j) = g.unit();
        for (const auto& r : bsb::bench_selection(d, ks, algs, bench_reps))
          rows += std::string(bsb::to_string(r.alg)) + "," + std::to_string(r.n) + "," + std::to_string(bench_reps) +
                  "," + bsb::format_fixed(r.median_ms, 4) + "," + bsb::format_fixed(r.min_ms, 4) + "\n";
      }
      const auto hash = crc32_hex("bench n=" + bench_sizes + " algorithms=" + bench_algs + " repetitions=" +
                                  std::to_string(bench_reps) + " seed=" + std::to_string(bench_seed) +
                                  " density=" + bsb::format_number(bench_density));
      if (bench_out.empty())
        out << provenance_line(hash) << bench_header << "\n" << rows;
      else
        append_csv(bench_out, hash, bench_header, rows);
    } else if (*gen) {
      const auto ks = bsb::key_space::from_size(gen_n);
      if (gen_duration < 0) throw config_error("gen-zipf: --duration must be >= 0");
      const auto rows = bsb::gen_zipf({gen_alpha, gen_rows, ks.size(), gen_seed});
      std::string text = "# bsbsim " BSB_VERSION " gen-zipf alpha=" + bsb::format_number(gen_alpha) +
                         " n=" + std::to_string(gen_n) + " rows=" + std::to_string(gen_rows) +
                         " seed=" + std::to_string(gen_seed) + "\n";
      for (std::size_t k = 0; k < rows.size(); ++k) {
        text += std::to_string(rows[k].src) + "," + std::to_string(rows[k].dst);
        if (gen_duration > 0) text += "," + bsb::format_number(gen_duration * double(k) / double(rows.size()));
        text += '\n';
      }
      emit(gen_out, text);
    } else if (*topo_cmd) {
      const auto alg = bsb::parse_algorithm(topo_alg);
      const auto [ks, d] = topo_src.load(err);
      std::ostringstream os;
      bsb::write_edge_list(os, bsb::build_topology(alg, ks, d));
      emit(topo_out, os.str());
    } else if (*route_cmd) {
      const auto alg = bsb::parse_algorithm(route_alg);
      const auto mech = route_mech == "native" ? bsb::native_mechanism(alg) : bsb::parse_mechanism(route_mech);
      const auto [ks, d] = route_src.load(err);
      const auto r = bsb::route_all(bsb::build_topology(alg, ks, d), mech);
      std::ostringstream os;
      bsb::write_dense_csv(os, r.hops);
      emit(route_out, os.str());
    }
  } catch (const config_error& e) {
    err << "config error: " << e.what() << "\n";
    return exit_code::config_failure;
  } catch (const std::invalid_argument& e) {
    err << "config error: " << e.what() << "\n";
    return exit_code::config_failure;
  } catch (const std::out_of_range& e) {
    err << "config error: " << e.what() << "\n";
    return exit_code::config_failure;
  } catch (const data_error& e) {
    err << "data error: " << e.what() << "\n";
    return exit_code::data_failure;
  } catch (const fs::filesystem_error& e) {
    err << "data error: " << e.what() << "\n";
    return exit_code::data_failure;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return exit_code::internal_failure;
  }
  return exit_code::ok;
}

} // namespace bsbsim
