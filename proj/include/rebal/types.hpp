#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace rebal {

using UserId = int;
using TaskId = int;
using LocationId = int;
using Money = double;

// Comparison tolerance for money-valued gates and assertions. Fixture values
// are either exactly representable or separated by far more than this.
inline constexpr double kMoneyTol = 1e-9;

// Utility gains below this are float noise, not strategic gains.
inline constexpr double kUtilityTol = 1e-6;

inline bool money_leq(Money a, Money b) { return a <= b + kMoneyTol; }
inline bool money_geq(Money a, Money b) { return a >= b - kMoneyTol; }
inline bool money_lt(Money a, Money b) { return a < b - kMoneyTol; }
inline bool money_eq(Money a, Money b) { return std::fabs(a - b) <= kMoneyTol; }

struct Point {
  double x = 0;
  double y = 0;
};

inline double euclidean(const Point& a, const Point& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

/// Seeded RNG with hand-rolled draw helpers so that outputs depend only on
/// the mt19937_64 stream, not on standard-library distribution internals.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform in [0, 1).
  double uniform01() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  /// Uniform integer in [0, n). n must be positive.
  std::size_t below(std::size_t n) {
    return static_cast<std::size_t>(next() % n);
  }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[below(i)]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

/// splitmix64 step; used to derive independent seed streams.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
  return splitmix64(base ^ splitmix64(stream));
}

}  // namespace rebal
