#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace noma {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Deterministic random stream. The engine (mt19937_64) is bit-exact across
// platforms; the distribution transforms live here because the standard
// library's distribution objects are implementation-defined and would break
// byte-identical reproducibility guarantees.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  // Independent stream for trial `index` of a run seeded with `seed`.
  static RandomStream substream(std::uint64_t seed, std::uint64_t index) {
    return RandomStream(splitmix64(seed ^ splitmix64(index + 0x243f6a8885a308d3ULL)));
  }

  // Uniform on [0, 1) with 53-bit resolution.
  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Box-Muller; second value cached.
  double normal(double mean = 0.0, double stddev = 1.0) {
    if (has_cached_) {
      has_cached_ = false;
      return mean + stddev * cached_;
    }
    double u1 = 1.0 - uniform01();  // (0, 1]
    double u2 = uniform01();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 6.283185307179586476925286766559 * u2;
    cached_ = r * std::sin(a);
    has_cached_ = true;
    return mean + stddev * r * std::cos(a);
  }

  double exponential(double mean = 1.0) {
    return -mean * std::log1p(-uniform01());
  }

  // Uniform integer on [0, n). Lemire's multiply-shift with rejection.
  std::uint64_t bounded(std::uint64_t n) {
    unsigned __int128 m = static_cast<unsigned __int128>(engine_()) * n;
    auto lo = static_cast<std::uint64_t>(m);
    if (lo < n) {
      std::uint64_t t = (0 - n) % n;
      while (lo < t) {
        m = static_cast<unsigned __int128>(engine_()) * n;
        lo = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  // Fisher-Yates.
  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(bounded(i));
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
  double cached_ = 0.0;
  bool has_cached_ = false;
};

}  // namespace noma
