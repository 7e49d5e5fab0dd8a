#pragma once

#include <string>
#include <vector>

#include "noma/channel.hpp"
#include "noma/random.hpp"

namespace noma {

// Ranks index the ordered snapshot; rank 0 is the strongest user.
struct Cluster {
  int strong_rank = 0;
  int weak_rank = 0;
};

struct PairingPlan {
  std::vector<Cluster> clusters;
  std::string algorithm_tag;

  int num_users() const { return 2 * static_cast<int>(clusters.size()); }
};

enum class PairingAlgo { random, nlupa, nbd, dnlupa };

std::string pairing_algo_name(PairingAlgo algo);
PairingAlgo pairing_algo_from_name(const std::string& name);  // throws on unknown

// Uniformly random perfect matching on ranks.
PairingPlan random_pairing(int n_users, RandomStream& rng);

// Cluster k pairs rank k with rank N-1-k.
PairingPlan nlupa(int n_users);

// Cluster k pairs rank 2k with rank 2k+1.
PairingPlan next_best_diversity(int n_users);

// Ranks are split into N/z consecutive sets of size z; set i merges with
// set i + N/(2z); NLUPA runs within each merged set. Requires N % (2z) == 0.
PairingPlan d_nlupa(int n_users, int set_size_z);

struct ClusterDiag {
  int range = 0;
  double distance_db = 0.0;
};

std::vector<ClusterDiag> plan_diagnostics(const PairingPlan& plan,
                                          const ChannelSnapshot& snapshot);

}  // namespace noma
