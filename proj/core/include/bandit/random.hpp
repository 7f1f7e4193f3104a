#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace bandit {

// Deterministic random stream used for every draw in the library.
//
// Generator: std::mt19937_64, whose output sequence is fixed by the C++
// standard. Substream seeds are derived with SplitMix64 from
// (seed, replication, index). Uniforms take the top 53 bits of one engine
// output; normals use the Marsaglia polar method implemented here (not
// std::normal_distribution, whose algorithm differs between standard
// libraries). Changing any of this changes every CSV the CLI writes, so
// the scheme is versioned by kStreamVersion.
class RandomStream {
 public:
  static constexpr int kStreamVersion = 1;

  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  // Independent substream for (seed, replication, index). Simulations use
  // index = arm for reward draws and index = K for policy randomization.
  static RandomStream substream(std::uint64_t seed, std::uint64_t replication,
                                std::uint64_t index) {
    return RandomStream(derive_seed(seed, replication, index));
  }

  static constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

  static constexpr std::uint64_t derive_seed(std::uint64_t seed,
                                             std::uint64_t replication,
                                             std::uint64_t index) {
    std::uint64_t h = splitmix64(seed);
    h = splitmix64(h ^ replication);
    return splitmix64(h ^ (index * 0xd1b54a32d192ed03ULL));
  }

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0, 1).
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  bool bernoulli(double p) { return uniform() < p; }

  double standard_normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u = 0.0;
    double v = 0.0;
    double s = 0.0;
    do {
      u = 2.0 * uniform() - 1.0;
      v = 2.0 * uniform() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double factor = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * factor;
    has_spare_ = true;
    return u * factor;
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace bandit
