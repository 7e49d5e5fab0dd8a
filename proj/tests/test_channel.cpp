#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "noma/channel.hpp"

using namespace noma;

TEST_SUITE("channel") {

TEST_CASE("degenerate annulus puts every user at the cell edge") {
  ChannelConfig config;
  config.min_distance_m = 100.0;
  config.cell_radius_m = 100.0;
  RandomStream rng(1);
  Eigen::ArrayXd d = drop_users(config, rng);
  REQUIRE(d.size() == 16);
  for (int i = 0; i < d.size(); ++i) CHECK(d[i] == doctest::Approx(100.0));
}

TEST_CASE("area-uniform drop has mean distance 2R/3") {
  ChannelConfig config;
  config.num_users = 2;
  RandomStream rng(7);
  double sum = 0;
  long count = 0;
  for (int t = 0; t < 50000; ++t) {
    Eigen::ArrayXd d = drop_users(config, rng);
    sum += d.sum();
    count += d.size();
  }
  double mean = sum / static_cast<double>(count);
  CHECK(std::abs(mean - 200.0 / 3.0) / (200.0 / 3.0) < 0.01);
}

TEST_CASE("fixed seed reproduces identical drops") {
  ChannelConfig config;
  RandomStream a(42), b(42);
  Eigen::ArrayXd da = drop_users(config, a);
  Eigen::ArrayXd db = drop_users(config, b);
  for (int i = 0; i < da.size(); ++i) CHECK(da[i] == db[i]);
}

TEST_CASE("unit factors reduce the gain to the fading draw") {
  ChannelConfig config;
  config.num_users = 8;
  config.shadowing_std_db = 0.0;
  config.path_loss_exponent = 2.0;
  config.noise_power_w = 1.0;
  Eigen::ArrayXd d = Eigen::ArrayXd::Ones(8);  // d^-alpha = 1
  RandomStream rng(5);
  ChannelSnapshot snap = realize_snapshot(d, config, rng);

  RandomStream replay(5);
  Eigen::ArrayXd fading(8);
  for (int i = 0; i < 8; ++i) fading[i] = replay.exponential(1.0);
  for (int k = 0; k < 8; ++k) {
    CHECK(snap.gains[k] == doctest::Approx(fading[snap.order[k]]).epsilon(1e-12));
  }
}

TEST_CASE("path loss scales gains by d^-alpha") {
  ChannelConfig config;
  config.num_users = 4;
  config.shadowing_std_db = 0.0;
  config.path_loss_exponent = 2.5;
  config.noise_power_w = 1.0;
  Eigen::ArrayXd d = Eigen::ArrayXd::Constant(4, 10.0);
  RandomStream rng(9);
  ChannelSnapshot snap = realize_snapshot(d, config, rng);

  RandomStream replay(9);
  Eigen::ArrayXd fading(4);
  for (int i = 0; i < 4; ++i) fading[i] = replay.exponential(1.0);
  const double loss = std::pow(10.0, -2.5);
  CHECK(loss == doctest::Approx(3.1623e-3).epsilon(1e-4));
  for (int k = 0; k < 4; ++k) {
    CHECK(snap.gains[k] ==
          doctest::Approx(fading[snap.order[k]] * loss).epsilon(1e-12));
  }
}

TEST_CASE("fading factor has unit mean and variance across realizations") {
  ChannelConfig config;
  config.num_users = 2;
  config.shadowing_std_db = 0.0;
  config.path_loss_exponent = 2.0;
  config.noise_power_w = 1.0;
  Eigen::ArrayXd d = Eigen::ArrayXd::Ones(2);
  RandomStream rng(13);
  double sum = 0, sumsq = 0;
  const long n = 100000;
  for (long t = 0; t < n / 2; ++t) {
    ChannelSnapshot snap = realize_snapshot(d, config, rng);
    for (int k = 0; k < 2; ++k) {
      sum += snap.gains[k];
      sumsq += snap.gains[k] * snap.gains[k];
    }
  }
  double mean = sum / n;
  double var = sumsq / n - mean * mean;
  CHECK(std::abs(mean - 1.0) < 0.02);
  CHECK(std::abs(var - 1.0) < 0.05);
}

TEST_CASE("non-positive noise power is rejected") {
  ChannelConfig config;
  config.noise_power_w = 0.0;
  Eigen::ArrayXd d = Eigen::ArrayXd::Ones(16);
  RandomStream rng(1);
  CHECK_THROWS_AS(realize_snapshot(d, config, rng), std::invalid_argument);
}

TEST_CASE("snapshots are sorted descending and the permutation inverts") {
  ChannelConfig config;
  RandomStream rng(21);
  Eigen::ArrayXd d = drop_users(config, rng);
  ChannelSnapshot snap = realize_snapshot(d, config, rng);
  REQUIRE(snap.descending);
  for (int k = 0; k + 1 < snap.num_users(); ++k) {
    CHECK(snap.gains[k] >= snap.gains[k + 1]);
  }
  std::vector<int> seen(snap.num_users(), 0);
  for (int idx : snap.order) {
    REQUIRE(idx >= 0);
    REQUIRE(idx < snap.num_users());
    ++seen[idx];
  }
  for (int c : seen) CHECK(c == 1);
}

TEST_CASE("gain ties break toward the lower original index") {
  ChannelSnapshot snap = snapshot_from_gains({1.0, 1.0, 2.0});
  REQUIRE(snap.num_users() == 3);
  CHECK(snap.order[0] == 2);
  CHECK(snap.order[1] == 0);
  CHECK(snap.order[2] == 1);
  CHECK(snap.gains[0] == 2.0);
  CHECK(snap.gains[1] == 1.0);
  CHECK(snap.gains[2] == 1.0);
}

TEST_CASE("identical seed and config give bit-identical snapshots") {
  ChannelConfig config;
  auto make = [&config]() {
    RandomStream rng(77);
    Eigen::ArrayXd d = drop_users(config, rng);
    return realize_snapshot(d, config, rng);
  };
  ChannelSnapshot a = make();
  ChannelSnapshot b = make();
  for (int k = 0; k < a.num_users(); ++k) {
    CHECK(a.gains[k] == b.gains[k]);
    CHECK(a.order[k] == b.order[k]);
  }
}

TEST_CASE("distance_db hand values") {
  CHECK(distance_db(3.0, 3.0) == doctest::Approx(0.0));
  CHECK(distance_db(10.0, 1.0) == doctest::Approx(10.0));
  CHECK(distance_db(3.1623, 1.0) == doctest::Approx(5.0).epsilon(1e-4));
  CHECK(distance_db(1.0, 10.0) == doctest::Approx(-10.0));
}

TEST_CASE("distance_db rejects non-positive gains") {
  CHECK_THROWS_AS(distance_db(0.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(distance_db(1.0, -2.0), std::domain_error);
}

TEST_CASE("config validation names the violated constraint") {
  ChannelConfig config;
  config.num_users = 7;
  CHECK_THROWS_AS(config.validate(), std::invalid_argument);
  config.num_users = 16;
  config.path_loss_exponent = 1.0;
  CHECK_THROWS_AS(config.validate(), std::invalid_argument);
}

}
