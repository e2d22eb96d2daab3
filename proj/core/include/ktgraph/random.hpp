#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace ktg {

// A seeded pseudo-random stream. Streams for parallel replicates are derived
// from (master seed, replicate index), so a replicate's draws never depend on
// which thread runs it or in which order.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed);

  static RandomStream derive(std::uint64_t master_seed, std::uint64_t index);

  double uniform();  // [0, 1)
  bool bernoulli(double p) { return uniform() < p; }
  double normal();

  std::mt19937_64& engine() noexcept { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::uniform_real_distribution<double> unit_{0.0, 1.0};
  std::normal_distribution<double> gauss_{0.0, 1.0};
};

// Stream index offsets so that different experiment phases sharing one master
// seed draw from disjoint stream families.
inline constexpr std::uint64_t kNullStreamFamily = 0x1000'0000ULL;
inline constexpr std::uint64_t kAltStreamFamily = 0x2000'0000ULL;
inline constexpr std::uint64_t kCalibrationStreamFamily = 0x3000'0000ULL;

}  // namespace ktg
