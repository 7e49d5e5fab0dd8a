#include "noma/rates.hpp"

#include <cmath>
#include <stdexcept>

namespace noma {

namespace {

void check_pair_inputs(double g_strong, double g_weak, double p_strong,
                       double p_weak, const char* who) {
  if (!(g_strong > 0) || !(g_weak > 0)) {
    throw std::invalid_argument(std::string(who) + ": gains must be positive");
  }
  if (p_strong < 0 || p_weak < 0) {
    throw std::invalid_argument(std::string(who) + ": powers must be >= 0");
  }
}

}  // namespace

PairRates noma_pair_rates(double g_strong, double g_weak, double p_strong,
                          double p_weak) {
  check_pair_inputs(g_strong, g_weak, p_strong, p_weak, "noma_pair_rates");
  PairRates rates;
  rates.r_strong = std::log2(1.0 + p_strong * g_strong);
  rates.r_weak = std::log2(1.0 + p_weak * g_weak / (p_strong * g_weak + 1.0));
  return rates;
}

PairRates oma_pair_rates(double g_strong, double g_weak, double p_strong,
                         double p_weak, double share) {
  check_pair_inputs(g_strong, g_weak, p_strong, p_weak, "oma_pair_rates");
  if (!(share > 0) || !(share < 1.0 + 1e-12)) {
    throw std::invalid_argument("oma_pair_rates: share must lie in (0, 1]");
  }
  PairRates rates;
  rates.r_strong = share * std::log2(1.0 + p_strong * g_strong);
  rates.r_weak = share * std::log2(1.0 + p_weak * g_weak);
  return rates;
}

double cluster_gain(const PairRates& noma, const PairRates& oma) {
  return noma.sum() - oma.sum();
}

double effective_sum_rate(const AllocationResult& alloc) {
  double total = 0.0;
  for (const UserAllocation& u : alloc.users) {
    if (u.admitted) total += u.rate;
  }
  return total;
}

int OutageFlags::strong_count() const {
  int n = 0;
  for (bool f : strong) n += f ? 1 : 0;
  return n;
}

int OutageFlags::weak_count() const {
  int n = 0;
  for (bool f : weak) n += f ? 1 : 0;
  return n;
}

OutageFlags outage_flags(const AllocationResult& alloc, const QosTarget& qos) {
  OutageFlags flags;
  for (const UserAllocation& u : alloc.users) {
    const bool out = !u.admitted || u.rate < qos.min_rate_bps_hz - kFeasibilityTol;
    if (u.role == UserRole::strong) {
      flags.strong.push_back(out);
    } else {
      flags.weak.push_back(out);
    }
  }
  return flags;
}

double jain_index(const std::vector<double>& rates) {
  if (rates.empty()) throw std::invalid_argument("jain_index: empty input");
  double sum = 0.0, sumsq = 0.0;
  for (double r : rates) {
    if (r < 0) throw std::invalid_argument("jain_index: rates must be >= 0");
    sum += r;
    sumsq += r * r;
  }
  if (sumsq == 0.0) throw std::invalid_argument("jain_index: all-zero input");
  return sum * sum / (static_cast<double>(rates.size()) * sumsq);
}

bool sic_decode_ok(double g_strong, double p_strong, double p_weak,
                   double r_weak) {
  check_pair_inputs(g_strong, g_strong, p_strong, p_weak, "sic_decode_ok");
  const double rate_at_strong =
      std::log2(1.0 + p_weak * g_strong / (p_strong * g_strong + 1.0));
  return rate_at_strong >= r_weak - kFeasibilityTol;
}

}  // namespace noma
