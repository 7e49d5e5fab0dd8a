#include "noma/pairing.hpp"

#include <numeric>
#include <stdexcept>

namespace noma {

namespace {

void require_even(int n_users) {
  if (n_users < 2 || n_users % 2 != 0) {
    throw std::invalid_argument("pairing: n_users must be even and >= 2");
  }
}

Cluster make_cluster(int a, int b) {
  return a < b ? Cluster{a, b} : Cluster{b, a};
}

}  // namespace

std::string pairing_algo_name(PairingAlgo algo) {
  switch (algo) {
    case PairingAlgo::random: return "random";
    case PairingAlgo::nlupa: return "nlupa";
    case PairingAlgo::nbd: return "nbd";
    case PairingAlgo::dnlupa: return "dnlupa";
  }
  return "unknown";
}

PairingAlgo pairing_algo_from_name(const std::string& name) {
  if (name == "random") return PairingAlgo::random;
  if (name == "nlupa") return PairingAlgo::nlupa;
  if (name == "nbd") return PairingAlgo::nbd;
  if (name == "dnlupa") return PairingAlgo::dnlupa;
  throw std::invalid_argument("pairing: unknown algorithm '" + name + "'");
}

PairingPlan random_pairing(int n_users, RandomStream& rng) {
  require_even(n_users);
  std::vector<int> ranks(n_users);
  std::iota(ranks.begin(), ranks.end(), 0);
  rng.shuffle(ranks);
  PairingPlan plan;
  plan.algorithm_tag = "random";
  plan.clusters.reserve(n_users / 2);
  for (int k = 0; k < n_users / 2; ++k) {
    plan.clusters.push_back(make_cluster(ranks[2 * k], ranks[2 * k + 1]));
  }
  return plan;
}

PairingPlan nlupa(int n_users) {
  require_even(n_users);
  PairingPlan plan;
  plan.algorithm_tag = "nlupa";
  plan.clusters.reserve(n_users / 2);
  for (int k = 0; k < n_users / 2; ++k) {
    plan.clusters.push_back({k, n_users - 1 - k});
  }
  return plan;
}

PairingPlan next_best_diversity(int n_users) {
  require_even(n_users);
  PairingPlan plan;
  plan.algorithm_tag = "nbd";
  plan.clusters.reserve(n_users / 2);
  for (int k = 0; k < n_users / 2; ++k) {
    plan.clusters.push_back({2 * k, 2 * k + 1});
  }
  return plan;
}

PairingPlan d_nlupa(int n_users, int set_size_z) {
  require_even(n_users);
  if (set_size_z < 1 || n_users % (2 * set_size_z) != 0) {
    throw std::invalid_argument("pairing: n_users must be divisible by 2*z");
  }
  const int z = set_size_z;
  const int merges = n_users / (2 * z);  // merged-set count
  PairingPlan plan;
  plan.algorithm_tag = "dnlupa";
  plan.clusters.reserve(n_users / 2);
  for (int j = 0; j < merges; ++j) {
    // merged set j holds ranks [jz, (j+1)z) and [(j+merges)z, (j+merges+1)z)
    const int lo = j * z;
    const int hi = (j + merges) * z;
    for (int i = 0; i < z; ++i) {
      plan.clusters.push_back({lo + i, hi + z - 1 - i});
    }
  }
  return plan;
}

std::vector<ClusterDiag> plan_diagnostics(const PairingPlan& plan,
                                          const ChannelSnapshot& snapshot) {
  if (plan.num_users() != snapshot.num_users()) {
    throw std::invalid_argument("pairing: plan and snapshot sizes differ");
  }
  std::vector<ClusterDiag> diags;
  diags.reserve(plan.clusters.size());
  for (const Cluster& c : plan.clusters) {
    diags.push_back({c.weak_rank - c.strong_rank,
                     distance_db(snapshot.gains[c.strong_rank],
                                 snapshot.gains[c.weak_rank])});
  }
  return diags;
}

}  // namespace noma
