#include "noma/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace noma {

std::vector<double> PowerGrid::points_dbm() const {
  validate();
  std::vector<double> points;
  for (int i = 0;; ++i) {
    const double p = min_dbm + i * step_db;
    if (p > max_dbm + 1e-9) break;
    points.push_back(p);
  }
  return points;
}

void PowerGrid::validate() const {
  if (!(step_db > 0)) throw std::invalid_argument("grid: step_db must be positive");
  if (max_dbm < min_dbm) throw std::invalid_argument("grid: max_dbm must be >= min_dbm");
}

std::string experiment_kind_name(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::gain_vs_distance: return "gain_vs_distance";
    case ExperimentKind::gain_vs_cluster_index: return "gain_vs_cluster_index";
    case ExperimentKind::outage_sweep: return "outage_sweep";
    case ExperimentKind::sumrate_sweep: return "sumrate_sweep";
  }
  return "unknown";
}

ExperimentKind experiment_kind_from_name(const std::string& name) {
  if (name == "gain_vs_distance") return ExperimentKind::gain_vs_distance;
  if (name == "gain_vs_cluster_index") return ExperimentKind::gain_vs_cluster_index;
  if (name == "outage_sweep") return ExperimentKind::outage_sweep;
  if (name == "sumrate_sweep") return ExperimentKind::sumrate_sweep;
  throw std::invalid_argument("experiments: unknown kind '" + name + "'");
}

void ExperimentSpec::validate() const {
  channel.validate();
  grid.validate();
  if (trials < 1) throw std::invalid_argument("experiments: trials must be >= 1");
  if (!(power_w > 0)) throw std::invalid_argument("experiments: power_w must be positive");
  if (!(fpa_ratio_weak > 0.5) || !(fpa_ratio_weak < 1.0)) {
    throw std::invalid_argument("experiments: fpa_ratio_weak must lie in (0.5, 1)");
  }
  if (qos.min_rate_bps_hz < 0) {
    throw std::invalid_argument("experiments: qos must be >= 0");
  }
  if (pairing_algorithms.empty()) {
    throw std::invalid_argument("experiments: pairing_algorithms must be non-empty");
  }
  if (threads < 0) throw std::invalid_argument("experiments: threads must be >= 0");
  const int n = channel.fixed_gains.empty()
                    ? channel.num_users
                    : static_cast<int>(channel.fixed_gains.size());
  for (PairingAlgo algo : pairing_algorithms) {
    if (algo == PairingAlgo::dnlupa) {
      if (set_size_z < 1 || n % (2 * set_size_z) != 0) {
        throw std::invalid_argument(
            "experiments: set_size_z must satisfy num_users % (2*z) == 0");
      }
    }
  }
}

ChannelSnapshot trial_snapshot(const ChannelConfig& channel, RandomStream& rng) {
  if (!channel.fixed_gains.empty()) {
    return snapshot_from_gains(channel.fixed_gains);
  }
  const Eigen::ArrayXd distances = drop_users(channel, rng);
  return realize_snapshot(distances, channel, rng);
}

PairingPlan make_plan(PairingAlgo algo, int n_users, int set_size_z,
                      RandomStream& rng) {
  switch (algo) {
    case PairingAlgo::random: return random_pairing(n_users, rng);
    case PairingAlgo::nlupa: return nlupa(n_users);
    case PairingAlgo::nbd: return next_best_diversity(n_users);
    case PairingAlgo::dnlupa: return d_nlupa(n_users, set_size_z);
  }
  throw std::invalid_argument("experiments: unknown pairing algorithm");
}

namespace {

struct Accumulator {
  double sum = 0.0;
  double sumsq = 0.0;
  long n = 0;

  void add(double x) {
    sum += x;
    sumsq += x * x;
    ++n;
  }
  PointStat stat() const {
    PointStat s;
    s.count = n;
    if (n == 0) return s;
    s.mean = sum / static_cast<double>(n);
    if (n > 1) {
      const double var =
          std::max(0.0, (sumsq - sum * sum / static_cast<double>(n)) /
                            static_cast<double>(n - 1));
      s.std_error = std::sqrt(var / static_cast<double>(n));
    }
    return s;
  }
};

}  // namespace

std::vector<GainTrialRecord> gain_trial_records(const ExperimentSpec& spec) {
  spec.validate();
  const PowerSplit unit_split = f_pa(spec.fpa_ratio_weak);
  return run_trials<GainTrialRecord>(
      spec.trials, spec.seed, spec.threads, [&spec, unit_split](long, RandomStream& rng) {
        GainTrialRecord record;
        const ChannelSnapshot snap = trial_snapshot(spec.channel, rng);
        const int n = snap.num_users();
        const int n_clusters = n / 2;
        const double cluster_budget = spec.power_w / n_clusters;
        record.per_algorithm.reserve(spec.pairing_algorithms.size());
        for (PairingAlgo algo : spec.pairing_algorithms) {
          const PairingPlan plan = make_plan(algo, n, spec.set_size_z, rng);
          std::vector<ClusterGainPoint> points;
          points.reserve(plan.clusters.size());
          for (const Cluster& c : plan.clusters) {
            const double g_s = snap.gains[c.strong_rank];
            const double g_w = snap.gains[c.weak_rank];
            const PairRates noma =
                noma_pair_rates(g_s, g_w, unit_split.p_strong * cluster_budget,
                                unit_split.p_weak * cluster_budget);
            const PairRates oma =
                oma_pair_rates(g_s, g_w, cluster_budget, cluster_budget, 0.5);
            points.push_back({distance_db(g_s, g_w), cluster_gain(noma, oma),
                              noma.sum()});
          }
          record.per_algorithm.push_back(std::move(points));
        }
        return record;
      });
}

GainDistanceStats run_gain_vs_distance(const ExperimentSpec& spec) {
  const std::vector<GainTrialRecord> records = gain_trial_records(spec);
  GainDistanceStats stats;
  for (PairingAlgo algo : spec.pairing_algorithms) {
    stats.algorithms.push_back(pairing_algo_name(algo));
  }
  const double bin_width = 1.0;
  for (std::size_t a = 0; a < spec.pairing_algorithms.size(); ++a) {
    std::map<long, Accumulator> bins;
    for (const GainTrialRecord& record : records) {
      for (const ClusterGainPoint& p : record.per_algorithm[a]) {
        bins[static_cast<long>(std::floor(p.distance_db / bin_width))].add(p.gain);
      }
    }
    std::vector<GainDistanceBin> out;
    out.reserve(bins.size());
    for (const auto& [idx, acc] : bins) {
      GainDistanceBin bin;
      bin.lo_db = static_cast<double>(idx) * bin_width;
      bin.center_db = bin.lo_db + 0.5 * bin_width;
      bin.stat = acc.stat();
      out.push_back(bin);
    }
    stats.bins.push_back(std::move(out));
  }
  return stats;
}

GainIndexStats run_gain_vs_cluster_index(const ExperimentSpec& spec) {
  const std::vector<GainTrialRecord> records = gain_trial_records(spec);
  GainIndexStats stats;
  for (PairingAlgo algo : spec.pairing_algorithms) {
    stats.algorithms.push_back(pairing_algo_name(algo));
  }
  const std::size_t n_clusters =
      records.empty() ? 0 : records.front().per_algorithm.front().size();
  for (std::size_t a = 0; a < spec.pairing_algorithms.size(); ++a) {
    std::vector<Accumulator> accs(n_clusters);
    std::vector<double> gains(n_clusters);
    for (const GainTrialRecord& record : records) {
      for (std::size_t c = 0; c < n_clusters; ++c) {
        gains[c] = record.per_algorithm[a][c].gain;
      }
      std::sort(gains.begin(), gains.end(), std::greater<>());
      for (std::size_t c = 0; c < n_clusters; ++c) accs[c].add(gains[c]);
    }
    std::vector<PointStat> out;
    out.reserve(n_clusters);
    for (const Accumulator& acc : accs) out.push_back(acc.stat());
    stats.per_index.push_back(std::move(out));
  }
  return stats;
}

std::vector<SweepTrialRecord> sweep_trial_records(const ExperimentSpec& spec) {
  spec.validate();
  const std::vector<double> points = spec.grid.points_dbm();
  return run_trials<SweepTrialRecord>(
      spec.trials, spec.seed, spec.threads, [&spec, &points](long, RandomStream& rng) {
        SweepTrialRecord record;
        const ChannelSnapshot snap = trial_snapshot(spec.channel, rng);
        const int n = snap.num_users();
        const PairingPlan plan =
            make_plan(spec.pairing_algorithms.front(), n, spec.set_size_z, rng);
        const int n_clusters = n / 2;
        record.per_power.resize(points.size());
        for (std::size_t p = 0; p < points.size(); ++p) {
          const double total = dbm_to_watts(points[p]);
          const double per_cluster = total / n_clusters;
          std::array<AllocationResult, 4> allocs;
          allocs[1] = c_noma(snap, plan, total, spec.qos);
          allocs[3] = c_oma(snap, plan, total, spec.qos);
          // equal-budget schemes assemble per-cluster results
          AllocationResult e_noma_all, e_oma_all;
          e_noma_all.scheme_tag = "e_noma";
          e_oma_all.scheme_tag = "e_oma";
          for (const Cluster& c : plan.clusters) {
            const double g_s = snap.gains[c.strong_rank];
            const double g_w = snap.gains[c.weak_rank];
            AllocationResult en = e_noma_cluster(g_s, g_w, per_cluster, spec.qos);
            AllocationResult eo = e_oma_cluster(g_s, g_w, per_cluster, spec.qos);
            e_noma_all.users.insert(e_noma_all.users.end(), en.users.begin(),
                                    en.users.end());
            e_oma_all.users.insert(e_oma_all.users.end(), eo.users.begin(),
                                   eo.users.end());
          }
          allocs[0] = std::move(e_noma_all);
          allocs[2] = std::move(e_oma_all);
          for (int s = 0; s < 4; ++s) {
            const OutageFlags flags = outage_flags(allocs[s], spec.qos);
            record.per_power[p][s].strong_outage = flags.strong_count();
            record.per_power[p][s].weak_outage = flags.weak_count();
            record.per_power[p][s].sum_rate = effective_sum_rate(allocs[s]);
          }
        }
        return record;
      });
}

OutageStats run_outage_sweep(const ExperimentSpec& spec) {
  const std::vector<SweepTrialRecord> records = sweep_trial_records(spec);
  const std::vector<double> points = spec.grid.points_dbm();
  const double n_clusters =
      (spec.channel.fixed_gains.empty()
           ? spec.channel.num_users
           : static_cast<int>(spec.channel.fixed_gains.size())) /
      2.0;
  OutageStats stats;
  for (std::size_t p = 0; p < points.size(); ++p) {
    for (int s = 0; s < 4; ++s) {
      Accumulator strong, weak;
      for (const SweepTrialRecord& record : records) {
        strong.add(record.per_power[p][s].strong_outage / n_clusters);
        weak.add(record.per_power[p][s].weak_outage / n_clusters);
      }
      stats.rows.push_back({points[p], kSchemeNames[s], "strong", strong.stat()});
      stats.rows.push_back({points[p], kSchemeNames[s], "weak", weak.stat()});
    }
  }
  return stats;
}

SumrateStats run_sumrate_sweep(const ExperimentSpec& spec) {
  const std::vector<SweepTrialRecord> records = sweep_trial_records(spec);
  const std::vector<double> points = spec.grid.points_dbm();
  SumrateStats stats;
  for (std::size_t p = 0; p < points.size(); ++p) {
    for (int s = 0; s < 4; ++s) {
      Accumulator acc;
      for (const SweepTrialRecord& record : records) {
        acc.add(record.per_power[p][s].sum_rate);
      }
      stats.rows.push_back({points[p], kSchemeNames[s], "", acc.stat()});
    }
  }
  return stats;
}

TrialMetrics make_trial_metrics(const AllocationResult& alloc,
                                const QosTarget& qos,
                                std::vector<double> cluster_gains) {
  TrialMetrics metrics;
  metrics.cluster_gains = std::move(cluster_gains);
  metrics.effective_sum_rate = effective_sum_rate(alloc);
  metrics.outage = outage_flags(alloc, qos);
  std::vector<double> admitted_rates;
  for (const UserAllocation& u : alloc.users) {
    if (u.admitted) admitted_rates.push_back(u.rate);
  }
  const bool any_positive =
      std::any_of(admitted_rates.begin(), admitted_rates.end(),
                  [](double r) { return r > 0; });
  metrics.jain = any_positive ? jain_index(admitted_rates) : 0.0;
  return metrics;
}

}  // namespace noma
