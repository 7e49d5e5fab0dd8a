#pragma once

#include <array>
#include <atomic>
#include <cstdint>
#include <string>
#include <thread>
#include <vector>

#include "noma/channel.hpp"
#include "noma/pairing.hpp"
#include "noma/power.hpp"
#include "noma/random.hpp"
#include "noma/rates.hpp"

namespace noma {

inline double dbm_to_watts(double dbm) { return std::pow(10.0, dbm / 10.0) * 1e-3; }

struct PowerGrid {
  double min_dbm = 0.0;
  double max_dbm = 40.0;
  double step_db = 5.0;

  std::vector<double> points_dbm() const;
  void validate() const;
};

enum class ExperimentKind {
  gain_vs_distance,
  gain_vs_cluster_index,
  outage_sweep,
  sumrate_sweep,
};

std::string experiment_kind_name(ExperimentKind kind);
ExperimentKind experiment_kind_from_name(const std::string& name);

struct ExperimentSpec {
  ExperimentKind kind = ExperimentKind::gain_vs_distance;
  ChannelConfig channel;
  std::vector<PairingAlgo> pairing_algorithms = {
      PairingAlgo::nlupa, PairingAlgo::dnlupa, PairingAlgo::random};
  QosTarget qos;
  PowerGrid grid;           // outage/sum-rate sweeps
  double power_w = 1.0;     // total transmit power for gain experiments
  double fpa_ratio_weak = 0.6;
  int set_size_z = 4;
  long trials = 1000;
  std::uint64_t seed = 1;
  int threads = 0;          // 0 = hardware concurrency

  void validate() const;
};

// Parallel trial engine. Trial t always draws from RandomStream::substream
// (seed, t) and writes into its own slot, so results are identical for any
// worker count and records come back ordered by trial index.
template <class Record, class Fn>
std::vector<Record> run_trials(long trials, std::uint64_t seed, int threads,
                               Fn&& fn) {
  std::vector<Record> records(static_cast<std::size_t>(trials));
  int workers = threads > 0
                    ? threads
                    : static_cast<int>(std::thread::hardware_concurrency());
  if (workers < 1) workers = 1;
  if (workers > trials) workers = static_cast<int>(trials);
  if (workers == 1) {
    for (long t = 0; t < trials; ++t) {
      RandomStream rng = RandomStream::substream(seed, static_cast<std::uint64_t>(t));
      records[static_cast<std::size_t>(t)] = fn(t, rng);
    }
    return records;
  }
  std::atomic<long> next{0};
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&]() {
      for (;;) {
        const long t = next.fetch_add(1);
        if (t >= trials) return;
        RandomStream rng = RandomStream::substream(seed, static_cast<std::uint64_t>(t));
        records[static_cast<std::size_t>(t)] = fn(t, rng);
      }
    });
  }
  for (std::thread& th : pool) th.join();
  return records;
}

// Snapshot for one trial: fixed gains when configured, otherwise a fresh
// drop-and-realize from the trial's stream.
ChannelSnapshot trial_snapshot(const ChannelConfig& channel, RandomStream& rng);

PairingPlan make_plan(PairingAlgo algo, int n_users, int set_size_z,
                      RandomStream& rng);

struct PointStat {
  double mean = 0.0;
  double std_error = 0.0;
  long count = 0;
};

// ---- per-cluster sum-rate gain under F-PA ----

struct ClusterGainPoint {
  double distance_db = 0.0;
  double gain = 0.0;      // NOMA pair sum minus OMA pair sum
  double noma_sum = 0.0;  // NOMA pair sum (aggregate-throughput checks)
};

struct GainTrialRecord {
  // per_algorithm[a][c]: cluster c under algorithm a (pairing_algorithms order)
  std::vector<std::vector<ClusterGainPoint>> per_algorithm;
};

std::vector<GainTrialRecord> gain_trial_records(const ExperimentSpec& spec);

struct GainDistanceBin {
  double lo_db = 0.0;
  double center_db = 0.0;
  PointStat stat;
};

struct GainDistanceStats {
  std::vector<std::string> algorithms;
  std::vector<std::vector<GainDistanceBin>> bins;  // per algorithm, ascending
};

GainDistanceStats run_gain_vs_distance(const ExperimentSpec& spec);

struct GainIndexStats {
  std::vector<std::string> algorithms;
  // per_index[a][i]: mean gain of the i-th largest cluster gain per trial
  std::vector<std::vector<PointStat>> per_index;
};

GainIndexStats run_gain_vs_cluster_index(const ExperimentSpec& spec);

// ---- QoS admission schemes over a power sweep ----

inline constexpr std::array<const char*, 4> kSchemeNames = {
    "e_noma", "c_noma", "e_oma", "c_oma"};

struct SchemeTrialPoint {
  int strong_outage = 0;
  int weak_outage = 0;
  double sum_rate = 0.0;
};

struct SweepTrialRecord {
  // per_power[p][s]: scheme s (kSchemeNames order) at grid point p
  std::vector<std::array<SchemeTrialPoint, 4>> per_power;
};

std::vector<SweepTrialRecord> sweep_trial_records(const ExperimentSpec& spec);

struct SweepRow {
  double power_dbm = 0.0;
  std::string scheme;
  std::string role;  // "strong"/"weak" for outage; empty for sum rate
  PointStat stat;
};

struct OutageStats {
  std::vector<SweepRow> rows;
};

struct SumrateStats {
  std::vector<SweepRow> rows;
};

OutageStats run_outage_sweep(const ExperimentSpec& spec);
SumrateStats run_sumrate_sweep(const ExperimentSpec& spec);

// Per-trial summary for one allocation (sweep diagnostics).
TrialMetrics make_trial_metrics(const AllocationResult& alloc,
                                const QosTarget& qos,
                                std::vector<double> cluster_gains = {});

}  // namespace noma
