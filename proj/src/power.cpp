#include "noma/power.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <tuple>

namespace noma {

namespace {

double rate_full(double p, double g) { return std::log2(1.0 + p * g); }

double rate_sic_weak(double p_weak, double g_weak, double p_strong) {
  return std::log2(1.0 + p_weak * g_weak / (p_strong * g_weak + 1.0));
}

double rate_share(double p, double g, double share) {
  return share * std::log2(1.0 + p * g);
}

void require_positive_gain(double g, const char* who) {
  if (!(g > 0)) throw std::invalid_argument(std::string(who) + ": gains must be positive");
}

}  // namespace

PowerSplit f_pa(double ratio_weak, bool allow_non_dominant) {
  if (!(ratio_weak > 0.0) || !(ratio_weak < 1.0)) {
    throw std::invalid_argument("f_pa: ratio_weak must lie in (0, 1)");
  }
  if (!allow_non_dominant && !(ratio_weak > 0.5)) {
    throw std::invalid_argument(
        "f_pa: ratio_weak must exceed 0.5 so the weak user dominates; "
        "pass allow_non_dominant to override");
  }
  return {1.0 - ratio_weak, ratio_weak};
}

Eigen::ArrayXd ftpc(const Eigen::ArrayXd& gains, double beta) {
  if (gains.size() == 0) throw std::invalid_argument("ftpc: empty gains");
  if ((gains <= 0.0).any()) throw std::invalid_argument("ftpc: gains must be positive");
  if (beta < 0) throw std::invalid_argument("ftpc: beta must be >= 0");
  Eigen::ArrayXd w = Eigen::pow(gains, -beta);
  return w / w.sum();
}

RequiredPowers noma_required_powers(double g_strong, double g_weak,
                                    const QosTarget& qos_strong,
                                    const QosTarget& qos_weak) {
  require_positive_gain(g_strong, "noma_required_powers");
  require_positive_gain(g_weak, "noma_required_powers");
  RequiredPowers req;
  req.q_strong = (std::exp2(qos_strong.min_rate_bps_hz) - 1.0) / g_strong;
  req.q_weak = (std::exp2(qos_weak.min_rate_bps_hz) - 1.0) *
               (req.q_strong * g_weak + 1.0) / g_weak;
  return req;
}

double oma_required_power(double g, const QosTarget& qos, double bandwidth_share) {
  require_positive_gain(g, "oma_required_power");
  if (!(bandwidth_share > 0.0) || bandwidth_share > 1.0) {
    throw std::invalid_argument("oma_required_power: share must lie in (0, 1]");
  }
  return (std::exp2(qos.min_rate_bps_hz / bandwidth_share) - 1.0) / g;
}

Eigen::ArrayXd water_fill_levels(const Eigen::ArrayXd& levels, double budget) {
  const long n = levels.size();
  if (n == 0) {
    if (budget > 0) throw std::invalid_argument("water_fill: no entries for positive budget");
    return {};
  }
  if (budget < 0) throw std::invalid_argument("water_fill: negative budget");
  Eigen::ArrayXd powers = Eigen::ArrayXd::Zero(n);
  if (budget == 0) return powers;
  std::vector<long> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(),
            [&levels](long a, long b) { return levels[a] < levels[b]; });
  double prefix = 0.0;
  double mu = 0.0;
  long active = 0;
  for (long k = 0; k < n; ++k) {
    prefix += levels[idx[k]];
    double cand = (budget + prefix) / static_cast<double>(k + 1);
    if (cand > levels[idx[k]]) {
      mu = cand;
      active = k + 1;
    }
  }
  for (long k = 0; k < active; ++k) {
    powers[idx[k]] = mu - levels[idx[k]];
  }
  return powers;
}

Eigen::ArrayXd water_fill(const Eigen::ArrayXd& gains, double budget) {
  if (gains.size() > 0 && (gains <= 0.0).any()) {
    throw std::invalid_argument("water_fill: gains must be positive");
  }
  return water_fill_levels(gains.size() ? gains.inverse().eval() : Eigen::ArrayXd{},
                           budget);
}

namespace {

// Cumulative SIC power needed so that every user reaches rate t; gains
// descending, user k sees interference from users 0..k-1.
double max_min_total_power(const Eigen::ArrayXd& gains_desc, double t) {
  const double beta = std::exp2(t) - 1.0;
  double cum = 0.0;
  for (long k = 0; k < gains_desc.size(); ++k) {
    cum += beta * (cum + 1.0 / gains_desc[k]);
    if (!std::isfinite(cum)) return std::numeric_limits<double>::infinity();
  }
  return cum;
}

}  // namespace

MaxMinResult max_min_bisection(const Eigen::ArrayXd& gains_desc, double budget,
                               double tol) {
  if (gains_desc.size() == 0) throw std::invalid_argument("max_min_bisection: empty gains");
  if ((gains_desc <= 0.0).any()) {
    throw std::invalid_argument("max_min_bisection: gains must be positive");
  }
  for (long k = 0; k + 1 < gains_desc.size(); ++k) {
    if (gains_desc[k] < gains_desc[k + 1]) {
      throw std::invalid_argument("max_min_bisection: gains must be descending");
    }
  }
  if (!(budget > 0)) throw std::invalid_argument("max_min_bisection: budget must be positive");
  if (!(tol > 0)) throw std::invalid_argument("max_min_bisection: tol must be positive");

  double lo = 0.0;
  double hi = std::log2(1.0 + budget * gains_desc[0]) + 1.0;
  while (hi - lo > tol) {
    double mid = 0.5 * (lo + hi);
    if (max_min_total_power(gains_desc, mid) <= budget) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  MaxMinResult result;
  result.common_rate = lo;
  result.powers.resize(gains_desc.size());
  const double beta = std::exp2(lo) - 1.0;
  double cum = 0.0;
  for (long k = 0; k < gains_desc.size(); ++k) {
    result.powers[k] = beta * (cum + 1.0 / gains_desc[k]);
    cum += result.powers[k];
  }
  return result;
}

std::optional<PowerSplit> cr_inspired_pa(double g_strong, double g_weak,
                                         double budget,
                                         const QosTarget& qos_weak) {
  require_positive_gain(g_strong, "cr_inspired_pa");
  require_positive_gain(g_weak, "cr_inspired_pa");
  if (!(budget > 0)) throw std::invalid_argument("cr_inspired_pa: budget must be positive");
  const double beta = std::exp2(qos_weak.min_rate_bps_hz) - 1.0;
  // Even p_strong = 0 leaves the weak user short of its QoS.
  if (budget * g_weak < beta - kFeasibilityTol) return std::nullopt;
  double p_strong = (budget * g_weak - beta) /
                    (g_weak * std::exp2(qos_weak.min_rate_bps_hz));
  p_strong = std::clamp(p_strong, 0.0, budget);
  return PowerSplit{p_strong, budget - p_strong};
}

std::optional<DynamicPaResult> dynamic_pa(double g_strong, double g_weak,
                                          double budget) {
  require_positive_gain(g_strong, "dynamic_pa");
  require_positive_gain(g_weak, "dynamic_pa");
  if (!(budget > 0)) throw std::invalid_argument("dynamic_pa: budget must be positive");
  auto boundary = [budget](double g) {
    return (std::sqrt(1.0 + budget * g) - 1.0) / (budget * g);
  };
  DynamicPaResult result;
  result.a_low = boundary(g_strong);
  result.a_high = boundary(g_weak);
  if (result.a_low > result.a_high + kFeasibilityTol) return std::nullopt;
  result.a_high = std::max(result.a_high, result.a_low);
  result.a_mid = 0.5 * (result.a_low + result.a_high);
  result.split = {result.a_mid * budget, (1.0 - result.a_mid) * budget};
  return result;
}

namespace {

// Sufficient-budget NOMA split: the weak user sits exactly at its QoS with
// p_strong = budget - p_weak; closed form of that fixed point.
PowerSplit qos_pinned_split(double g_weak, double budget, double rate) {
  const double beta = std::exp2(rate) - 1.0;
  double p_weak = beta * (budget * g_weak + 1.0) / (g_weak * std::exp2(rate));
  return {budget - p_weak, p_weak};
}

UserAllocation alloc(bool admitted, double power, double rate, UserRole role) {
  return {admitted, admitted ? power : 0.0, admitted ? rate : 0.0, role};
}

}  // namespace

AllocationResult e_noma_cluster(double g_strong, double g_weak,
                                double cluster_budget, const QosTarget& qos) {
  require_positive_gain(g_strong, "e_noma_cluster");
  require_positive_gain(g_weak, "e_noma_cluster");
  if (cluster_budget < 0) throw std::invalid_argument("e_noma_cluster: negative budget");
  const double r = qos.min_rate_bps_hz;
  AllocationResult result;
  result.scheme_tag = "e_noma";
  const RequiredPowers req = noma_required_powers(g_strong, g_weak, qos, qos);
  if (req.total() <= cluster_budget + kFeasibilityTol) {
    const PowerSplit split = qos_pinned_split(g_weak, cluster_budget, r);
    const double r_strong = rate_full(split.p_strong, g_strong);
    const double r_weak = rate_sic_weak(split.p_weak, g_weak, split.p_strong);
    if (r_strong >= r - kFeasibilityTol) {
      result.users = {alloc(true, split.p_strong, r_strong, UserRole::strong),
                      alloc(true, split.p_weak, r_weak, UserRole::weak)};
      return result;
    }
  }
  const double r_alone = rate_full(cluster_budget, g_strong);
  const bool admitted = r_alone >= r - kFeasibilityTol;
  result.users = {alloc(admitted, cluster_budget, r_alone, UserRole::strong),
                  alloc(false, 0.0, 0.0, UserRole::weak)};
  return result;
}

AllocationResult e_oma_cluster(double g_strong, double g_weak,
                               double cluster_budget, const QosTarget& qos) {
  require_positive_gain(g_strong, "e_oma_cluster");
  require_positive_gain(g_weak, "e_oma_cluster");
  if (cluster_budget < 0) throw std::invalid_argument("e_oma_cluster: negative budget");
  const double r = qos.min_rate_bps_hz;
  const double share = 0.5;
  AllocationResult result;
  result.scheme_tag = "e_oma";
  const double q_strong = oma_required_power(g_strong, qos, share);
  const double q_weak = oma_required_power(g_weak, qos, share);
  if (q_strong + q_weak <= cluster_budget + kFeasibilityTol) {
    Eigen::ArrayXd levels(2);
    levels << 1.0 / g_strong + q_strong, 1.0 / g_weak + q_weak;
    const Eigen::ArrayXd extra =
        water_fill_levels(levels, cluster_budget - q_strong - q_weak);
    const double p_strong = q_strong + extra[0];
    const double p_weak = q_weak + extra[1];
    result.users = {alloc(true, p_strong, rate_share(p_strong, g_strong, share),
                          UserRole::strong),
                    alloc(true, p_weak, rate_share(p_weak, g_weak, share),
                          UserRole::weak)};
    return result;
  }
  const double r_alone = rate_share(cluster_budget, g_strong, share);
  const bool admitted = r_alone >= r - kFeasibilityTol;
  result.users = {alloc(admitted, cluster_budget, r_alone, UserRole::strong),
                  alloc(false, 0.0, 0.0, UserRole::weak)};
  return result;
}

namespace {

struct ClusterReq {
  double q_strong = 0.0;
  double q_weak_incr = 0.0;  // weak user's power given partner at q_strong
};

std::vector<ClusterReq> cluster_requirements(const ChannelSnapshot& snapshot,
                                             const PairingPlan& plan,
                                             const QosTarget& qos) {
  std::vector<ClusterReq> reqs;
  reqs.reserve(plan.clusters.size());
  for (const Cluster& c : plan.clusters) {
    const RequiredPowers req = noma_required_powers(
        snapshot.gains[c.strong_rank], snapshot.gains[c.weak_rank], qos, qos);
    reqs.push_back({req.q_strong, req.q_weak});
  }
  return reqs;
}

}  // namespace

AllocationResult c_noma(const ChannelSnapshot& snapshot, const PairingPlan& plan,
                        double total_budget, const QosTarget& qos) {
  if (plan.num_users() != snapshot.num_users()) {
    throw std::invalid_argument("c_noma: plan and snapshot sizes differ");
  }
  if (total_budget < 0) throw std::invalid_argument("c_noma: negative budget");
  const double r = qos.min_rate_bps_hz;
  const std::size_t n_clusters = plan.clusters.size();
  AllocationResult result;
  result.scheme_tag = "c_noma";
  result.users.assign(snapshot.num_users(), {});
  for (const Cluster& c : plan.clusters) {
    result.users[c.strong_rank].role = UserRole::strong;
    result.users[c.weak_rank].role = UserRole::weak;
  }

  const std::vector<ClusterReq> reqs = cluster_requirements(snapshot, plan, qos);
  double total_required = 0.0;
  for (const ClusterReq& cr : reqs) total_required += cr.q_strong + cr.q_weak_incr;

  if (total_required <= total_budget + kFeasibilityTol) {
    Eigen::ArrayXd strong_gains(static_cast<long>(n_clusters));
    for (std::size_t c = 0; c < n_clusters; ++c) {
      strong_gains[static_cast<long>(c)] = snapshot.gains[plan.clusters[c].strong_rank];
    }
    const Eigen::ArrayXd extra =
        water_fill(strong_gains, total_budget - total_required);
    for (std::size_t c = 0; c < n_clusters; ++c) {
      const Cluster& cl = plan.clusters[c];
      const double g_s = snapshot.gains[cl.strong_rank];
      const double g_w = snapshot.gains[cl.weak_rank];
      const double cluster_budget =
          reqs[c].q_strong + reqs[c].q_weak_incr + extra[static_cast<long>(c)];
      const PowerSplit split = qos_pinned_split(g_w, cluster_budget, r);
      result.users[cl.strong_rank] =
          alloc(true, split.p_strong, rate_full(split.p_strong, g_s), UserRole::strong);
      result.users[cl.weak_rank] =
          alloc(true, split.p_weak, rate_sic_weak(split.p_weak, g_w, split.p_strong),
                UserRole::weak);
    }
    return result;
  }

  // Greedy admission, cheapest requirement first. A weak user whose partner
  // is not admitted carries the partner's requirement as a bundle.
  std::vector<bool> adm_strong(n_clusters, false), adm_weak(n_clusters, false);
  double remaining = total_budget;
  while (true) {
    double best_cost = std::numeric_limits<double>::infinity();
    std::size_t best_cluster = 0;
    bool best_is_weak = false;
    for (std::size_t c = 0; c < n_clusters; ++c) {
      if (!adm_strong[c]) {
        if (reqs[c].q_strong < best_cost) {
          best_cost = reqs[c].q_strong;
          best_cluster = c;
          best_is_weak = false;
        }
      }
      if (!adm_weak[c]) {
        const double cost =
            adm_strong[c] ? reqs[c].q_weak_incr
                          : reqs[c].q_strong + reqs[c].q_weak_incr;
        if (cost < best_cost) {
          best_cost = cost;
          best_cluster = c;
          best_is_weak = true;
        }
      }
    }
    if (!std::isfinite(best_cost) || best_cost > remaining + kFeasibilityTol) break;
    remaining -= best_cost;
    adm_strong[best_cluster] = true;
    if (best_is_weak) adm_weak[best_cluster] = true;
  }
  for (std::size_t c = 0; c < n_clusters; ++c) {
    const Cluster& cl = plan.clusters[c];
    const double g_s = snapshot.gains[cl.strong_rank];
    const double g_w = snapshot.gains[cl.weak_rank];
    result.users[cl.strong_rank] =
        alloc(adm_strong[c], reqs[c].q_strong, rate_full(reqs[c].q_strong, g_s),
              UserRole::strong);
    result.users[cl.weak_rank] =
        alloc(adm_weak[c], reqs[c].q_weak_incr,
              rate_sic_weak(reqs[c].q_weak_incr, g_w, reqs[c].q_strong),
              UserRole::weak);
  }
  return result;
}

AllocationResult c_oma(const ChannelSnapshot& snapshot, const PairingPlan& plan,
                       double total_budget, const QosTarget& qos) {
  if (plan.num_users() != snapshot.num_users()) {
    throw std::invalid_argument("c_oma: plan and snapshot sizes differ");
  }
  if (total_budget < 0) throw std::invalid_argument("c_oma: negative budget");
  const double share = 0.5;
  const int n = snapshot.num_users();
  AllocationResult result;
  result.scheme_tag = "c_oma";
  result.users.assign(n, {});
  for (const Cluster& c : plan.clusters) {
    result.users[c.strong_rank].role = UserRole::strong;
    result.users[c.weak_rank].role = UserRole::weak;
  }

  Eigen::ArrayXd required(n);
  for (int i = 0; i < n; ++i) {
    required[i] = oma_required_power(snapshot.gains[i], qos, share);
  }

  if (required.sum() <= total_budget + kFeasibilityTol) {
    const Eigen::ArrayXd levels = snapshot.gains.inverse() + required;
    const Eigen::ArrayXd extra =
        water_fill_levels(levels, total_budget - required.sum());
    for (int i = 0; i < n; ++i) {
      const double p = required[i] + extra[i];
      result.users[i].admitted = true;
      result.users[i].power = p;
      result.users[i].rate = rate_share(p, snapshot.gains[i], share);
    }
    return result;
  }

  // Ranks are already in descending gain order; admit until the next user
  // no longer fits.
  double cum = 0.0;
  for (int i = 0; i < n; ++i) {
    if (cum + required[i] > total_budget + kFeasibilityTol) break;
    cum += required[i];
    result.users[i].admitted = true;
    result.users[i].power = required[i];
    result.users[i].rate = rate_share(required[i], snapshot.gains[i], share);
  }
  return result;
}

}  // namespace noma
