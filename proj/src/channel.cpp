#include "noma/channel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace noma {

void ChannelConfig::validate() const {
  // >= admits the degenerate single-radius annulus used for fixed-distance
  // setups.
  if (!(cell_radius_m >= min_distance_m) || !(min_distance_m > 0)) {
    throw std::invalid_argument("channel: require cell_radius_m >= min_distance_m > 0");
  }
  if (path_loss_exponent < 2.0) {
    throw std::invalid_argument("channel: path_loss_exponent must be >= 2");
  }
  if (shadowing_std_db < 0) {
    throw std::invalid_argument("channel: shadowing_std_db must be >= 0");
  }
  if (noise_power_w <= 0) {
    throw std::invalid_argument("channel: noise_power_w must be positive");
  }
  if (num_users < 2 || num_users % 2 != 0) {
    throw std::invalid_argument("channel: num_users must be even and >= 2");
  }
  for (double g : fixed_gains) {
    if (!(g > 0) || !std::isfinite(g)) {
      throw std::invalid_argument("channel: fixed_gains must be positive and finite");
    }
  }
  if (!fixed_gains.empty() &&
      (fixed_gains.size() < 2 || fixed_gains.size() % 2 != 0)) {
    throw std::invalid_argument("channel: fixed_gains count must be even and >= 2");
  }
}

Eigen::ArrayXd drop_users(const ChannelConfig& config, RandomStream& rng) {
  config.validate();
  const double r0sq = config.min_distance_m * config.min_distance_m;
  const double r1sq = config.cell_radius_m * config.cell_radius_m;
  Eigen::ArrayXd d(config.num_users);
  for (int i = 0; i < config.num_users; ++i) {
    d[i] = std::sqrt(r0sq + rng.uniform01() * (r1sq - r0sq));
  }
  return d;
}

namespace {

ChannelSnapshot sorted_snapshot(const Eigen::ArrayXd& raw) {
  const int n = static_cast<int>(raw.size());
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  // stable_sort keeps lower original index first among equal gains
  std::stable_sort(order.begin(), order.end(),
                   [&raw](int a, int b) { return raw[a] > raw[b]; });
  ChannelSnapshot snap;
  snap.gains.resize(n);
  snap.order = order;
  for (int k = 0; k < n; ++k) snap.gains[k] = raw[order[k]];
  snap.descending = true;
  return snap;
}

}  // namespace

ChannelSnapshot realize_snapshot(const Eigen::ArrayXd& distances,
                                 const ChannelConfig& config,
                                 RandomStream& rng) {
  if (config.noise_power_w <= 0) {
    throw std::invalid_argument("channel: noise_power_w must be positive");
  }
  const int n = static_cast<int>(distances.size());
  Eigen::ArrayXd fading(n), shadow_db(n);
  for (int i = 0; i < n; ++i) fading[i] = rng.exponential(1.0);
  for (int i = 0; i < n; ++i) shadow_db[i] = rng.normal(0.0, config.shadowing_std_db);
  Eigen::ArrayXd raw = fading * Eigen::pow(10.0, shadow_db / 10.0) *
                       Eigen::pow(distances, -config.path_loss_exponent) /
                       config.noise_power_w;
  return sorted_snapshot(raw);
}

ChannelSnapshot snapshot_from_gains(const std::vector<double>& gains) {
  Eigen::ArrayXd raw = Eigen::Map<const Eigen::ArrayXd>(gains.data(),
                                                        static_cast<long>(gains.size()));
  return sorted_snapshot(raw);
}

double distance_db(double g_strong, double g_weak) {
  if (!(g_strong > 0) || !(g_weak > 0)) {
    throw std::domain_error("distance_db: gains must be positive");
  }
  return 10.0 * std::log10(g_strong / g_weak);
}

}  // namespace noma
