#pragma once

#include <Eigen/Core>
#include <vector>

#include "noma/random.hpp"

namespace noma {

struct ChannelConfig {
  double cell_radius_m = 100.0;
  double min_distance_m = 1.0;
  double path_loss_exponent = 2.5;
  double shadowing_std_db = 3.0;
  // Default gives a cell-edge user (d = 100 m, unit fading, no shadowing)
  // a transmit SNR of 30 dB at 1 W: 100^-2.5 / 1e-8 = 1e3.
  double noise_power_w = 1e-8;
  int num_users = 16;
  // When non-empty, experiments bypass drop/realize and use these
  // noise-normalized gains directly (test and degenerate-geometry hook).
  std::vector<double> fixed_gains;

  void validate() const;  // throws std::invalid_argument
};

struct ChannelSnapshot {
  Eigen::ArrayXd gains;     // noise-normalized |h|^2 * L / sigma^2, sorted
  std::vector<int> order;   // rank -> original user index
  bool descending = true;

  int num_users() const { return static_cast<int>(gains.size()); }
};

// Distances from the BS, uniform over the annulus area
// [min_distance_m, cell_radius_m] (density proportional to r).
Eigen::ArrayXd drop_users(const ChannelConfig& config, RandomStream& rng);

// g_i = |h_i|^2 * 10^(X_i/10) * d_i^-alpha / sigma^2 with |h_i|^2 ~ Exp(1)
// and X_i ~ N(0, shadowing_std_db^2); sorted descending, ties broken by
// lower original index.
ChannelSnapshot realize_snapshot(const Eigen::ArrayXd& distances,
                                 const ChannelConfig& config,
                                 RandomStream& rng);

// Sorts the given gains into a snapshot (same ordering rules).
ChannelSnapshot snapshot_from_gains(const std::vector<double>& gains);

// 10*log10(g_strong/g_weak); throws std::domain_error on non-positive input.
double distance_db(double g_strong, double g_weak);

}  // namespace noma
