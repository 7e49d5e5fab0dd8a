#include "noma/config.hpp"

#include <cctype>
#include <chrono>
#include <climits>
#include <cstdio>
#include <ctime>
#include <sstream>
#include <stdexcept>

#include "noma/csv.hpp"

namespace noma {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      parts.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(trim(cur));
  return parts;
}

struct ParseCtx {
  std::string source;
  int line = 0;
  std::string key;

  [[noreturn]] void fail(const std::string& message) const {
    std::ostringstream out;
    out << source << ":" << line << ": ";
    if (!key.empty()) out << "key '" << key << "': ";
    out << message;
    throw std::invalid_argument(out.str());
  }
};

double parse_double(const ParseCtx& ctx, const std::string& value) {
  std::size_t pos = 0;
  double v = 0;
  try {
    v = std::stod(value, &pos);
  } catch (const std::exception&) {
    ctx.fail("expected a number, got '" + value + "'");
  }
  if (pos != value.size()) ctx.fail("expected a number, got '" + value + "'");
  return v;
}

long parse_long(const ParseCtx& ctx, const std::string& value) {
  std::size_t pos = 0;
  long v = 0;
  try {
    v = std::stol(value, &pos);
  } catch (const std::exception&) {
    ctx.fail("expected an integer, got '" + value + "'");
  }
  if (pos != value.size()) ctx.fail("expected an integer, got '" + value + "'");
  return v;
}

int parse_int(const ParseCtx& ctx, const std::string& value) {
  long v = parse_long(ctx, value);
  if (v < INT_MIN || v > INT_MAX) ctx.fail("integer out of range: '" + value + "'");
  return static_cast<int>(v);
}

std::uint64_t parse_u64(const ParseCtx& ctx, const std::string& value) {
  std::size_t pos = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(value, &pos);
  } catch (const std::exception&) {
    ctx.fail("expected an unsigned integer, got '" + value + "'");
  }
  if (pos != value.size() || value.find('-') != std::string::npos) {
    ctx.fail("expected an unsigned integer, got '" + value + "'");
  }
  return static_cast<std::uint64_t>(v);
}

std::vector<PairingAlgo> parse_pairing_list(const ParseCtx& ctx,
                                            const std::string& value) {
  std::vector<PairingAlgo> algos;
  for (const std::string& name : split(value, ',')) {
    if (name.empty()) ctx.fail("empty algorithm name in list");
    try {
      algos.push_back(pairing_algo_from_name(name));
    } catch (const std::exception&) {
      ctx.fail("unknown pairing algorithm '" + name +
               "' (expected random|nlupa|nbd|dnlupa)");
    }
  }
  return algos;
}

void apply_channel_key(const ParseCtx& ctx, ChannelConfig& channel,
                       const std::string& value) {
  const std::string& key = ctx.key;
  if (key == "num_users") {
    int v = parse_int(ctx, value);
    if (v < 2) ctx.fail("must be >= 2");
    channel.num_users = v;
  } else if (key == "cell_radius_m") {
    double v = parse_double(ctx, value);
    if (!(v > 0)) ctx.fail("must be positive");
    channel.cell_radius_m = v;
  } else if (key == "min_distance_m") {
    double v = parse_double(ctx, value);
    if (!(v > 0)) ctx.fail("must be positive");
    channel.min_distance_m = v;
  } else if (key == "path_loss_exponent") {
    double v = parse_double(ctx, value);
    if (!(v > 0)) ctx.fail("must be positive");
    channel.path_loss_exponent = v;
  } else if (key == "shadowing_std_db") {
    double v = parse_double(ctx, value);
    if (v < 0) ctx.fail("must be >= 0");
    channel.shadowing_std_db = v;
  } else if (key == "noise_power_w") {
    double v = parse_double(ctx, value);
    if (!(v > 0)) ctx.fail("must be positive");
    channel.noise_power_w = v;
  } else if (key == "fixed_gains") {
    std::vector<double> gains;
    for (const std::string& part : split(value, ',')) {
      if (part.empty()) ctx.fail("empty entry in gain list");
      double g = parse_double(ctx, part);
      if (!(g > 0)) ctx.fail("gains must be positive");
      gains.push_back(g);
    }
    channel.fixed_gains = gains;
  } else {
    ctx.fail("unknown key in section [channel]");
  }
}

void apply_experiment_key(const ParseCtx& ctx, ExperimentSpec& spec,
                          const std::string& value) {
  const std::string& key = ctx.key;
  if (key == "kind") {
    try {
      spec.kind = experiment_kind_from_name(value);
    } catch (const std::exception&) {
      ctx.fail("unknown experiment kind '" + value + "'");
    }
  } else if (key == "trials") {
    long v = parse_long(ctx, value);
    if (v < 1) ctx.fail("must be >= 1");
    spec.trials = v;
  } else if (key == "seed") {
    spec.seed = parse_u64(ctx, value);
  } else if (key == "threads") {
    int v = parse_int(ctx, value);
    if (v < 0) ctx.fail("must be >= 0");
    spec.threads = v;
  } else if (key == "power_w") {
    double v = parse_double(ctx, value);
    if (!(v > 0)) ctx.fail("must be positive");
    spec.power_w = v;
  } else if (key == "min_dbm") {
    spec.grid.min_dbm = parse_double(ctx, value);
  } else if (key == "max_dbm") {
    spec.grid.max_dbm = parse_double(ctx, value);
  } else if (key == "step_db") {
    double v = parse_double(ctx, value);
    if (!(v > 0)) ctx.fail("must be positive");
    spec.grid.step_db = v;
  } else if (key == "pairing" || key == "pairing_algorithms") {
    spec.pairing_algorithms = parse_pairing_list(ctx, value);
  } else if (key == "z" || key == "set_size_z") {
    int v = parse_int(ctx, value);
    if (v < 1) ctx.fail("must be >= 1");
    spec.set_size_z = v;
  } else if (key == "fpa_ratio_weak") {
    double v = parse_double(ctx, value);
    if (!(v > 0.5 && v < 1)) ctx.fail("must lie in (0.5, 1)");
    spec.fpa_ratio_weak = v;
  } else {
    ctx.fail("unknown key in section [experiment]");
  }
}

void apply_qos_key(const ParseCtx& ctx, QosTarget& qos,
                   const std::string& value) {
  if (ctx.key == "min_rate_bps_hz") {
    double v = parse_double(ctx, value);
    if (v < 0) ctx.fail("must be >= 0");
    qos.min_rate_bps_hz = v;
  } else {
    ctx.fail("unknown key in section [qos]");
  }
}

}  // namespace

ExperimentSpec parse_config_text(const std::string& text,
                                 const std::string& source_name,
                                 const FlagOverrides& overrides) {
  ExperimentSpec spec;
  ParseCtx ctx;
  ctx.source = source_name;
  std::string section;
  std::istringstream in(text);
  std::string raw;
  while (std::getline(in, raw)) {
    ++ctx.line;
    ctx.key.clear();
    std::string line = trim(raw);
    if (line.empty() || line[0] == '#' || line[0] == ';') continue;
    if (line.front() == '[') {
      if (line.back() != ']') ctx.fail("unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      if (section != "channel" && section != "experiment" &&
          section != "qos" && section != "manifest") {
        ctx.fail("unknown section [" + section + "]");
      }
      continue;
    }
    std::size_t eq = line.find('=');
    if (eq == std::string::npos) ctx.fail("expected 'key = value' or '[section]'");
    ctx.key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (ctx.key.empty()) ctx.fail("missing key before '='");
    if (section.empty()) ctx.fail("key appears before any [section] header");
    if (section == "manifest") continue;  // provenance only, never re-read
    if (section == "channel") {
      apply_channel_key(ctx, spec.channel, value);
    } else if (section == "experiment") {
      apply_experiment_key(ctx, spec, value);
    } else {
      apply_qos_key(ctx, spec.qos, value);
    }
  }

  if (overrides.seed) spec.seed = *overrides.seed;
  if (overrides.trials) {
    if (*overrides.trials < 1) {
      throw std::invalid_argument(source_name + ": flag --trials must be >= 1");
    }
    spec.trials = *overrides.trials;
  }
  if (overrides.pairing) {
    ParseCtx flag_ctx;
    flag_ctx.source = "--pairing";
    flag_ctx.line = 0;
    flag_ctx.key = "pairing";
    spec.pairing_algorithms = parse_pairing_list(flag_ctx, *overrides.pairing);
  }
  if (overrides.set_size_z) {
    if (*overrides.set_size_z < 1) {
      throw std::invalid_argument(source_name + ": flag --z must be >= 1");
    }
    spec.set_size_z = *overrides.set_size_z;
  }
  if (overrides.threads) {
    if (*overrides.threads < 0) {
      throw std::invalid_argument(source_name + ": flag --threads must be >= 0");
    }
    spec.threads = *overrides.threads;
  }

  try {
    spec.validate();
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(source_name + ": " + e.what());
  }
  return spec;
}

ExperimentSpec parse_config(const std::string& path,
                            const FlagOverrides& overrides) {
  if (path.empty()) return parse_config_text("", "<defaults>", overrides);
  return parse_config_text(read_file(path), path, overrides);
}

std::string serialize_spec(const ExperimentSpec& spec) {
  std::ostringstream out;
  out << "[channel]\n";
  out << "num_users = " << spec.channel.num_users << "\n";
  out << "cell_radius_m = " << format_double(spec.channel.cell_radius_m) << "\n";
  out << "min_distance_m = " << format_double(spec.channel.min_distance_m) << "\n";
  out << "path_loss_exponent = " << format_double(spec.channel.path_loss_exponent) << "\n";
  out << "shadowing_std_db = " << format_double(spec.channel.shadowing_std_db) << "\n";
  out << "noise_power_w = " << format_double(spec.channel.noise_power_w) << "\n";
  if (!spec.channel.fixed_gains.empty()) {
    out << "fixed_gains = ";
    for (std::size_t i = 0; i < spec.channel.fixed_gains.size(); ++i) {
      if (i) out << ",";
      out << format_double(spec.channel.fixed_gains[i]);
    }
    out << "\n";
  }
  out << "\n[experiment]\n";
  out << "kind = " << experiment_kind_name(spec.kind) << "\n";
  out << "trials = " << spec.trials << "\n";
  out << "seed = " << spec.seed << "\n";
  out << "threads = " << spec.threads << "\n";
  out << "power_w = " << format_double(spec.power_w) << "\n";
  out << "min_dbm = " << format_double(spec.grid.min_dbm) << "\n";
  out << "max_dbm = " << format_double(spec.grid.max_dbm) << "\n";
  out << "step_db = " << format_double(spec.grid.step_db) << "\n";
  out << "pairing = ";
  for (std::size_t i = 0; i < spec.pairing_algorithms.size(); ++i) {
    if (i) out << ",";
    out << pairing_algo_name(spec.pairing_algorithms[i]);
  }
  out << "\n";
  out << "z = " << spec.set_size_z << "\n";
  out << "fpa_ratio_weak = " << format_double(spec.fpa_ratio_weak) << "\n";
  out << "\n[qos]\n";
  out << "min_rate_bps_hz = " << format_double(spec.qos.min_rate_bps_hz) << "\n";
  return out.str();
}

std::string serialize_manifest(const RunManifest& manifest) {
  std::ostringstream out;
  out << "[manifest]\n";
  out << "tool_version = " << manifest.tool_version << "\n";
  out << "created_utc = " << manifest.created_utc << "\n";
  out << "subcommand = " << manifest.subcommand << "\n";
  out << "outputs = ";
  for (std::size_t i = 0; i < manifest.outputs.size(); ++i) {
    if (i) out << ",";
    out << manifest.outputs[i];
  }
  out << "\n\n";
  out << serialize_spec(manifest.spec);
  return out.str();
}

std::string utc_timestamp_now() {
  std::time_t now = std::chrono::system_clock::to_time_t(
      std::chrono::system_clock::now());
  std::tm tm_utc{};
  gmtime_r(&now, &tm_utc);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  return buf;
}

}  // namespace noma
