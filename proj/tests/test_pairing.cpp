#include "doctest.h"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "noma/pairing.hpp"

using namespace noma;

namespace {

bool is_partition(const PairingPlan& plan, int n) {
  if (static_cast<int>(plan.clusters.size()) != n / 2) return false;
  std::set<int> seen;
  for (const Cluster& c : plan.clusters) {
    if (c.strong_rank >= c.weak_rank) return false;
    seen.insert(c.strong_rank);
    seen.insert(c.weak_rank);
  }
  return static_cast<int>(seen.size()) == n && *seen.begin() == 0 &&
         *seen.rbegin() == n - 1;
}

int min_range(const PairingPlan& plan) {
  int best = 1 << 30;
  for (const Cluster& c : plan.clusters) {
    best = std::min(best, c.weak_rank - c.strong_rank);
  }
  return best;
}

std::string matching_signature(const PairingPlan& plan) {
  std::vector<Cluster> cs = plan.clusters;
  std::sort(cs.begin(), cs.end(), [](const Cluster& a, const Cluster& b) {
    return a.strong_rank < b.strong_rank;
  });
  std::string sig;
  for (const Cluster& c : cs) {
    sig += std::to_string(c.strong_rank) + "-" + std::to_string(c.weak_rank) + ";";
  }
  return sig;
}

}  // namespace

TEST_SUITE("pairing") {

TEST_CASE("random pairing on two users has a single cluster") {
  RandomStream rng(1);
  PairingPlan plan = random_pairing(2, rng);
  REQUIRE(plan.clusters.size() == 1);
  CHECK(plan.clusters[0].strong_rank == 0);
  CHECK(plan.clusters[0].weak_rank == 1);
}

TEST_CASE("random pairing on four users is uniform over the 3 matchings") {
  RandomStream rng(123);
  std::map<std::string, int> freq;
  const int draws = 100000;
  for (int t = 0; t < draws; ++t) {
    freq[matching_signature(random_pairing(4, rng))]++;
  }
  REQUIRE(freq.size() == 3);
  for (const auto& [sig, n] : freq) {
    CHECK(std::abs(n / double(draws) - 1.0 / 3) < 0.02);
  }
}

TEST_CASE("random pairing partitions sixteen ranks") {
  RandomStream rng(9);
  PairingPlan plan = random_pairing(16, rng);
  CHECK(plan.clusters.size() == 8);
  CHECK(is_partition(plan, 16));
}

TEST_CASE("odd populations are rejected") {
  RandomStream rng(2);
  CHECK_THROWS_AS(random_pairing(5, rng), std::invalid_argument);
  CHECK_THROWS_AS(nlupa(7), std::invalid_argument);
  CHECK_THROWS_AS(next_best_diversity(3), std::invalid_argument);
}

TEST_CASE("nlupa pairs extremes inward") {
  PairingPlan plan = nlupa(6);
  REQUIRE(plan.clusters.size() == 3);
  CHECK(plan.clusters[0].strong_rank == 0);
  CHECK(plan.clusters[0].weak_rank == 5);
  CHECK(plan.clusters[1].strong_rank == 1);
  CHECK(plan.clusters[1].weak_rank == 4);
  CHECK(plan.clusters[2].strong_rank == 2);
  CHECK(plan.clusters[2].weak_rank == 3);

  PairingPlan p16 = nlupa(16);
  CHECK(p16.clusters[0].strong_rank == 0);
  CHECK(p16.clusters[0].weak_rank == 15);
  CHECK(min_range(p16) == 1);

  PairingPlan p2 = nlupa(2);
  REQUIRE(p2.clusters.size() == 1);
  CHECK(p2.clusters[0].strong_rank == 0);
  CHECK(p2.clusters[0].weak_rank == 1);
}

TEST_CASE("next-best-diversity pairs adjacent ranks") {
  PairingPlan plan = next_best_diversity(6);
  REQUIRE(plan.clusters.size() == 3);
  for (int k = 0; k < 3; ++k) {
    CHECK(plan.clusters[k].strong_rank == 2 * k);
    CHECK(plan.clusters[k].weak_rank == 2 * k + 1);
  }
  PairingPlan p16 = next_best_diversity(16);
  for (const Cluster& c : p16.clusters) CHECK(c.weak_rank - c.strong_rank == 1);
}

TEST_CASE("d_nlupa reproduces the sixteen-user, z=4 construction") {
  PairingPlan plan = d_nlupa(16, 4);
  REQUIRE(plan.clusters.size() == 8);
  std::set<std::pair<int, int>> pairs;
  for (const Cluster& c : plan.clusters) pairs.insert({c.strong_rank, c.weak_rank});
  std::set<std::pair<int, int>> expected = {{0, 11}, {1, 10}, {2, 9}, {3, 8},
                                            {4, 15}, {5, 14}, {6, 13}, {7, 12}};
  CHECK(pairs == expected);
  CHECK(min_range(plan) == 5);
  CHECK(min_range(nlupa(16)) == 1);
}

TEST_CASE("d_nlupa with a single merged set degenerates to nlupa") {
  PairingPlan d = d_nlupa(16, 8);
  PairingPlan n = nlupa(16);
  CHECK(matching_signature(d) == matching_signature(n));
}

TEST_CASE("d_nlupa divisibility violations are rejected") {
  CHECK_THROWS_AS(d_nlupa(16, 3), std::invalid_argument);
  CHECK_THROWS_AS(d_nlupa(10, 4), std::invalid_argument);
  CHECK_THROWS_AS(d_nlupa(16, 0), std::invalid_argument);
}

TEST_CASE("all algorithms partition ranks for every even population") {
  RandomStream rng(31);
  for (int n = 2; n <= 64; n += 2) {
    CHECK(is_partition(random_pairing(n, rng), n));
    CHECK(is_partition(nlupa(n), n));
    CHECK(is_partition(next_best_diversity(n), n));
    for (int z = 1; 2 * z <= n; ++z) {
      if (n % (2 * z) != 0) continue;
      CHECK(is_partition(d_nlupa(n, z), n));
    }
  }
}

TEST_CASE("d_nlupa minimum range dominates nlupa whenever sets merge apart") {
  for (int n = 4; n <= 64; n += 2) {
    for (int z = 1; 2 * z <= n; ++z) {
      if (n % (2 * z) != 0) continue;
      int mr = min_range(d_nlupa(n, z));
      if (2 * z < n) {
        CHECK(mr >= z + 1);
        CHECK(mr > min_range(nlupa(n)));
      } else {
        CHECK(mr == 1);
      }
    }
  }
}

TEST_CASE("nlupa and d_nlupa keep the same strong-rank set") {
  for (int n : {8, 16, 32}) {
    auto strong_set = [](const PairingPlan& plan) {
      std::set<int> s;
      for (const Cluster& c : plan.clusters) s.insert(c.strong_rank);
      return s;
    };
    std::set<int> expected;
    for (int k = 0; k < n / 2; ++k) expected.insert(k);
    CHECK(strong_set(nlupa(n)) == expected);
    for (int z = 1; 2 * z <= n; ++z) {
      if (n % (2 * z) != 0) continue;
      CHECK(strong_set(d_nlupa(n, z)) == expected);
    }
  }
}

TEST_CASE("plan diagnostics report range and dB distance") {
  std::vector<double> gains(16);
  gains[0] = 100.0;
  for (int i = 1; i < 15; ++i) gains[i] = 50.0 - i;
  gains[15] = 1.0;
  ChannelSnapshot snap = snapshot_from_gains(gains);
  PairingPlan plan = nlupa(16);
  std::vector<ClusterDiag> diag = plan_diagnostics(plan, snap);
  REQUIRE(diag.size() == 8);
  CHECK(diag[0].range == 15);
  CHECK(diag[0].distance_db == doctest::Approx(20.0));
  std::vector<int> ranges;
  for (const ClusterDiag& d : diag) ranges.push_back(d.range);
  CHECK(ranges == std::vector<int>{15, 13, 11, 9, 7, 5, 3, 1});
}

TEST_CASE("adjacent equal gains give range 1 and distance 0") {
  ChannelSnapshot snap = snapshot_from_gains({2.0, 2.0});
  PairingPlan plan = next_best_diversity(2);
  std::vector<ClusterDiag> diag = plan_diagnostics(plan, snap);
  REQUIRE(diag.size() == 1);
  CHECK(diag[0].range == 1);
  CHECK(diag[0].distance_db == doctest::Approx(0.0));
}

TEST_CASE("diagnostics reject mismatched sizes") {
  ChannelSnapshot snap = snapshot_from_gains({4.0, 3.0, 2.0, 1.0});
  PairingPlan plan = nlupa(6);
  CHECK_THROWS_AS(plan_diagnostics(plan, snap), std::invalid_argument);
}

TEST_CASE("distances within a plan are never negative") {
  RandomStream rng(17);
  std::vector<double> gains;
  for (int i = 0; i < 16; ++i) gains.push_back(rng.exponential(1.0) + 1e-6);
  ChannelSnapshot snap = snapshot_from_gains(gains);
  for (const PairingPlan& plan :
       {random_pairing(16, rng), nlupa(16), next_best_diversity(16), d_nlupa(16, 4)}) {
    for (const ClusterDiag& d : plan_diagnostics(plan, snap)) {
      CHECK(d.distance_db >= 0.0);
    }
  }
}

}
