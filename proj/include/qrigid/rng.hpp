#pragma once

#include <cmath>
#include <cstdint>

#include "qrigid/scalar.hpp"

namespace qrigid {

// Counter-based generator, "qrigid-rng-v1". The word stream is a pure
// function of (seed, stream, counter) built from splitmix64, so equal specs
// reproduce equal draws with no hidden state shared between instances.
// Gaussian and dyadic variates consume a fixed number of words per call.
struct RngSpec {
  std::uint64_t seed = 1;
  std::uint64_t stream = 0;

  friend bool operator==(const RngSpec& a, const RngSpec& b) {
    return a.seed == b.seed && a.stream == b.stream;
  }
};

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

class CounterRng {
 public:
  explicit CounterRng(RngSpec spec)
      : key_(splitmix64(spec.seed ^ 0x6A09E667F3BCC909ULL) ^
             splitmix64(spec.stream * 0xBF58476D1CE4E5B9ULL + 1)) {}

  std::uint64_t next_u64() { return splitmix64(key_ + 0x9E3779B97F4A7C15ULL * ++counter_); }

  // Uniform on [0, 1), 53 significant bits.
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Standard normal via Box-Muller; always consumes exactly two words.
  double gaussian() {
    const double u1 = (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
    const double u2 = static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.14159265358979323846 * u2);
  }

  // Uniform dyadic rational in [-1, 1] with denominator 2^bits.
  ExactScalar dyadic(unsigned bits = 16) {
    const std::uint64_t span = (std::uint64_t{2} << bits) + 1;  // 2^(bits+1) + 1 values
    const auto numer =
        static_cast<long>(next_u64() % span) - static_cast<long>(std::uint64_t{1} << bits);
    return ExactScalar::ratio(numer, static_cast<long>(std::uint64_t{1} << bits));
  }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

// Injective per-trial substream derivation for sweeps: splitmix64 is a
// bijection, so distinct (n, d, trial) triples never collide for a fixed
// base stream.
inline RngSpec trial_rng_spec(const RngSpec& base, std::size_t n, std::size_t d,
                              std::size_t trial) {
  const std::uint64_t encoded = (static_cast<std::uint64_t>(n) << 40) |
                                (static_cast<std::uint64_t>(d) << 20) |
                                static_cast<std::uint64_t>(trial);
  return RngSpec{base.seed, splitmix64(base.stream ^ (encoded * 0x9E3779B97F4A7C15ULL))};
}

}  // namespace qrigid
