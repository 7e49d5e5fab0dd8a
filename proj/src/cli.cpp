#include "noma/cli.hpp"

#include <filesystem>
#include <iostream>
#include <map>
#include <stdexcept>

#include "CLI11.hpp"
#include "noma/csv.hpp"
#include "noma/svg.hpp"

namespace noma {

namespace {

namespace fs = std::filesystem;

struct OutputSink {
  fs::path dir;
  std::vector<std::string> written;

  void csv(const std::string& name, const std::vector<std::string>& header,
           const std::vector<std::vector<CsvCell>>& rows) {
    write_csv((dir / name).string(), header, rows);
    written.push_back(name);
  }

  void svg(const std::string& name, const std::vector<SvgSeries>& series,
           const SvgChartOptions& options) {
    write_line_chart((dir / name).string(), series, options);
    written.push_back(name);
  }
};

void emit_gain_distance(const ExperimentSpec& base, bool plot, OutputSink& sink) {
  ExperimentSpec spec = base;
  spec.kind = ExperimentKind::gain_vs_distance;
  GainDistanceStats stats = run_gain_vs_distance(spec);
  std::vector<std::vector<CsvCell>> rows;
  std::vector<SvgSeries> series;
  for (std::size_t a = 0; a < stats.algorithms.size(); ++a) {
    SvgSeries s{stats.algorithms[a], {}};
    for (const GainDistanceBin& bin : stats.bins[a]) {
      rows.push_back({stats.algorithms[a], bin.lo_db, bin.center_db,
                      bin.stat.mean, bin.stat.std_error, bin.stat.count});
      s.points.emplace_back(bin.center_db, bin.stat.mean);
    }
    series.push_back(std::move(s));
  }
  sink.csv("gain_distance.csv",
           {"algorithm", "bin_lo_db", "bin_center_db", "mean_gain", "stderr",
            "count"},
           rows);
  if (plot) {
    sink.svg("gain_distance.svg", series,
             {"Pair sum-rate gain vs channel distance",
              "channel gain distance (dB)", "mean gain (b/s/Hz)", false, 860,
              520});
  }
}

void emit_gain_index(const ExperimentSpec& base, bool plot, OutputSink& sink) {
  ExperimentSpec spec = base;
  spec.kind = ExperimentKind::gain_vs_cluster_index;
  GainIndexStats stats = run_gain_vs_cluster_index(spec);
  std::vector<std::vector<CsvCell>> rows;
  std::vector<SvgSeries> series;
  for (std::size_t a = 0; a < stats.algorithms.size(); ++a) {
    SvgSeries s{stats.algorithms[a], {}};
    for (std::size_t i = 0; i < stats.per_index[a].size(); ++i) {
      const PointStat& st = stats.per_index[a][i];
      rows.push_back({stats.algorithms[a], static_cast<long>(i), st.mean,
                      st.std_error, st.count});
      s.points.emplace_back(static_cast<double>(i), st.mean);
    }
    series.push_back(std::move(s));
  }
  sink.csv("gain_index.csv",
           {"algorithm", "cluster_index", "mean_gain", "stderr", "trials"},
           rows);
  if (plot) {
    sink.svg("gain_index.svg", series,
             {"Pair sum-rate gain vs sorted cluster index", "cluster index",
              "mean gain (b/s/Hz)", false, 860, 520});
  }
}

void emit_outage(const ExperimentSpec& base, bool plot, OutputSink& sink) {
  ExperimentSpec spec = base;
  spec.kind = ExperimentKind::outage_sweep;
  OutageStats stats = run_outage_sweep(spec);
  std::vector<std::vector<CsvCell>> rows;
  std::map<std::string, SvgSeries> by_series;
  for (const SweepRow& row : stats.rows) {
    rows.push_back({row.power_dbm, row.scheme, row.role, row.stat.mean,
                    row.stat.std_error, row.stat.count});
    std::string label = row.scheme + " " + row.role;
    SvgSeries& s = by_series[label];
    s.label = label;
    s.points.emplace_back(row.power_dbm, row.stat.mean);
  }
  sink.csv("outage.csv",
           {"power", "scheme", "role", "outage_prob", "stderr", "trials"},
           rows);
  if (plot) {
    std::vector<SvgSeries> series;
    for (auto& [label, s] : by_series) series.push_back(std::move(s));
    sink.svg("outage.svg", series,
             {"Outage probability vs transmit power", "transmit power (dBm)",
              "outage probability", true, 860, 520});
  }
}

void emit_sumrate(const ExperimentSpec& base, bool plot, OutputSink& sink) {
  ExperimentSpec spec = base;
  spec.kind = ExperimentKind::sumrate_sweep;
  SumrateStats stats = run_sumrate_sweep(spec);
  std::vector<std::vector<CsvCell>> rows;
  std::map<std::string, SvgSeries> by_series;
  for (const SweepRow& row : stats.rows) {
    rows.push_back({row.power_dbm, row.scheme, row.stat.mean,
                    row.stat.std_error, row.stat.count});
    SvgSeries& s = by_series[row.scheme];
    s.label = row.scheme;
    s.points.emplace_back(row.power_dbm, row.stat.mean);
  }
  sink.csv("sumrate.csv",
           {"power", "scheme", "mean_sum_rate", "stderr", "trials"}, rows);
  if (plot) {
    std::vector<SvgSeries> series;
    for (auto& [label, s] : by_series) series.push_back(std::move(s));
    sink.svg("sumrate.svg", series,
             {"Mean effective sum rate vs transmit power",
              "transmit power (dBm)", "sum rate (b/s/Hz)", false, 860, 520});
  }
}

}  // namespace

int run_command(const std::string& subcommand, const ExperimentSpec& spec,
                const std::string& out_dir, bool plot, std::ostream& diag) {
  try {
    spec.validate();
    bool all = subcommand == "all";
    if (!all && subcommand != "gain-distance" && subcommand != "gain-index" &&
        subcommand != "outage" && subcommand != "sumrate") {
      diag << "error: unknown subcommand '" << subcommand << "'\n";
      return 2;
    }
    OutputSink sink;
    sink.dir = out_dir.empty() ? fs::path(".") : fs::path(out_dir);
    std::error_code ec;
    fs::create_directories(sink.dir, ec);
    if (ec) {
      diag << "error: cannot create output directory '" << sink.dir.string()
           << "': " << ec.message() << "\n";
      return 1;
    }
    if (all || subcommand == "gain-distance") emit_gain_distance(spec, plot, sink);
    if (all || subcommand == "gain-index") emit_gain_index(spec, plot, sink);
    if (all || subcommand == "outage") emit_outage(spec, plot, sink);
    if (all || subcommand == "sumrate") emit_sumrate(spec, plot, sink);

    RunManifest manifest;
    manifest.spec = spec;
    manifest.created_utc = utc_timestamp_now();
    manifest.subcommand = subcommand;
    manifest.outputs = sink.written;
    write_file((sink.dir / "manifest.txt").string(),
               serialize_manifest(manifest));
    return 0;
  } catch (const std::exception& e) {
    diag << "error: " << e.what() << "\n";
    return 1;
  }
}

int cli_main(int argc, const char* const* argv) {
  CLI::App app{
      "Link-level Monte Carlo simulator for downlink NOMA user pairing and "
      "power allocation"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = "out";
  std::string pairing;
  std::uint64_t seed = 0;
  long trials = 0;
  int z = 0;
  int threads = 0;
  bool plot = false;

  app.add_option("--config", config_path,
                 "Configuration file ([channel]/[experiment]/[qos] sections)");
  CLI::Option* seed_opt = app.add_option("--seed", seed, "Override RNG seed");
  CLI::Option* trials_opt =
      app.add_option("--trials", trials, "Override trial count");
  app.add_option("--out", out_dir, "Output directory")->capture_default_str();
  app.add_flag("--plot", plot, "Also write SVG plots");
  CLI::Option* pairing_opt = app.add_option(
      "--pairing", pairing,
      "Pairing algorithms, comma-separated: random|nlupa|nbd|dnlupa");
  CLI::Option* z_opt = app.add_option("--z", z, "Set size z for dnlupa");
  CLI::Option* threads_opt =
      app.add_option("--threads", threads, "Worker threads (0 = all cores)");

  const std::pair<const char*, const char*> subs[] = {
      {"gain-distance", "Pair gain vs channel-gain distance"},
      {"gain-index", "Pair gain vs sorted cluster index"},
      {"outage", "Outage probability vs transmit power"},
      {"sumrate", "Effective sum rate vs transmit power"},
      {"all", "Run every experiment"},
  };
  for (const auto& [name, desc] : subs) app.add_subcommand(name, desc)->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    FlagOverrides overrides;
    if (seed_opt->count() > 0) overrides.seed = seed;
    if (trials_opt->count() > 0) overrides.trials = trials;
    if (pairing_opt->count() > 0) overrides.pairing = pairing;
    if (z_opt->count() > 0) overrides.set_size_z = z;
    if (threads_opt->count() > 0) overrides.threads = threads;
    ExperimentSpec spec = parse_config(config_path, overrides);
    const std::string sub = app.get_subcommands().front()->get_name();
    return run_command(sub, spec, out_dir, plot, std::cerr);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace noma
