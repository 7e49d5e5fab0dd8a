#pragma once

#include <Eigen/Core>
#include <optional>
#include <string>
#include <vector>

#include "noma/channel.hpp"
#include "noma/pairing.hpp"

namespace noma {

inline constexpr double kFeasibilityTol = 1e-9;

struct QosTarget {
  double min_rate_bps_hz = 1.0;
};

struct PowerSplit {
  double p_strong = 0.0;
  double p_weak = 0.0;
};

enum class UserRole { strong, weak };

struct UserAllocation {
  bool admitted = false;
  double power = 0.0;
  double rate = 0.0;  // 0 for non-admitted users
  UserRole role = UserRole::strong;
};

struct AllocationResult {
  std::vector<UserAllocation> users;  // indexed by snapshot rank
  std::string scheme_tag;
};

// Fixed-ratio split normalized to a unit budget. The weak user's share must
// dominate (ratio_weak > 0.5) unless the override flag is set.
PowerSplit f_pa(double ratio_weak, bool allow_non_dominant = false);

// share_i = g_i^-beta / sum_j g_j^-beta.
Eigen::ArrayXd ftpc(const Eigen::ArrayXd& gains, double beta);

struct RequiredPowers {
  double q_strong = 0.0;
  double q_weak = 0.0;
  double total() const { return q_strong + q_weak; }
};

// Minimal powers meeting both QoS targets under SIC:
// q_strong = (2^r_n - 1)/g_n, q_weak = (2^r_m - 1)(q_strong*g_m + 1)/g_m.
RequiredPowers noma_required_powers(double g_strong, double g_weak,
                                    const QosTarget& qos_strong,
                                    const QosTarget& qos_weak);

// q = (2^(r/share) - 1)/g, inverting r = share*log2(1 + q*g).
double oma_required_power(double g, const QosTarget& qos, double bandwidth_share);

// p_i = max(0, mu - levels_i) with sum = budget (sorted-threshold procedure).
Eigen::ArrayXd water_fill_levels(const Eigen::ArrayXd& levels, double budget);

// Classic water-filling: levels are inverse gains.
Eigen::ArrayXd water_fill(const Eigen::ArrayXd& gains, double budget);

struct MaxMinResult {
  Eigen::ArrayXd powers;
  double common_rate = 0.0;
};

// Largest common rate t achievable for all users under SIC with gains in
// descending order; bisection on t until the bracket is below tol.
MaxMinResult max_min_bisection(const Eigen::ArrayXd& gains_desc, double budget,
                               double tol = 1e-6);

// Maximum p_strong keeping the weak user's rate (with p_weak = budget -
// p_strong and p_strong as interference) at or above qos_weak.
std::optional<PowerSplit> cr_inspired_pa(double g_strong, double g_weak,
                                         double budget,
                                         const QosTarget& qos_weak);

struct DynamicPaResult {
  double a_low = 0.0;   // strong-user power-share interval endpoints
  double a_high = 0.0;
  double a_mid = 0.0;   // chosen split
  PowerSplit split;
};

// Interval of strong-user power shares for which both NOMA rates meet or
// exceed the OMA baseline (each user: full budget at half bandwidth).
std::optional<DynamicPaResult> dynamic_pa(double g_strong, double g_weak,
                                          double budget);

// ---- QoS-constrained admission schemes (one cluster / whole population) ----

// Equal per-cluster budget NOMA: weak user pinned exactly at QoS, remainder
// to the strong user; on insufficient budget the strong user gets all of it.
AllocationResult e_noma_cluster(double g_strong, double g_weak,
                                double cluster_budget, const QosTarget& qos);

// Cross-cluster NOMA: required powers for everyone if the budget suffices,
// residual split by water-filling over the strong users' gains (each cluster
// then re-solved at its enlarged budget, weak user kept at QoS); otherwise
// greedy admission in ascending required power (weak users bundle their
// strong partner's requirement while the partner is unadmitted).
AllocationResult c_noma(const ChannelSnapshot& snapshot, const PairingPlan& plan,
                        double total_budget, const QosTarget& qos);

// Equal per-cluster budget OMA (half bandwidth per user): required powers
// plus residual water-filling when feasible; otherwise the strong user gets
// all the power on its own half band.
AllocationResult e_oma_cluster(double g_strong, double g_weak,
                               double cluster_budget, const QosTarget& qos);

// Cross-cluster OMA: all-user water-fill on top of required powers when the
// budget suffices; otherwise admission in descending gain order until the
// next user no longer fits.
AllocationResult c_oma(const ChannelSnapshot& snapshot, const PairingPlan& plan,
                       double total_budget, const QosTarget& qos);

}  // namespace noma
