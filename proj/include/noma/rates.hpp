#pragma once

#include <vector>

#include "noma/power.hpp"

namespace noma {

struct PairRates {
  double r_strong = 0.0;
  double r_weak = 0.0;
  double sum() const { return r_strong + r_weak; }
};

// Two-user downlink SIC: the strong user cancels the weak user's signal;
// the weak user treats the strong user's signal as noise.
PairRates noma_pair_rates(double g_strong, double g_weak, double p_strong,
                          double p_weak);

// Orthogonal baseline: r = share * log2(1 + p * g) per user (power dedicated,
// only degrees of freedom are split).
PairRates oma_pair_rates(double g_strong, double g_weak, double p_strong,
                         double p_weak, double share = 0.5);

// NOMA pair sum minus OMA pair sum; may be negative.
double cluster_gain(const PairRates& noma, const PairRates& oma);

// Sum of rates over admitted users only.
double effective_sum_rate(const AllocationResult& alloc);

struct OutageFlags {
  std::vector<bool> strong;  // one entry per strong-role user, rank order
  std::vector<bool> weak;

  int strong_count() const;
  int weak_count() const;
};

// Outage: not admitted, or admitted below QoS - tolerance.
OutageFlags outage_flags(const AllocationResult& alloc, const QosTarget& qos);

// (sum r)^2 / (n * sum r^2); throws on empty or all-zero input.
double jain_index(const std::vector<double>& rates);

// Diagnostic for the implicit SIC-success assumption: whether the strong
// user can decode the weak user's message at the weak user's target rate.
bool sic_decode_ok(double g_strong, double p_strong, double p_weak,
                   double r_weak);

struct TrialMetrics {
  std::vector<double> cluster_gains;
  double effective_sum_rate = 0.0;
  OutageFlags outage;
  double jain = 0.0;
};

}  // namespace noma
