#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

namespace pinnproj {

/// Role of a derived random stream. Every consumer of randomness in the
/// repo draws from its own stream so that, e.g., changing how many training
/// points are sampled never perturbs the LHS collocation cloud.
enum class RngStream : std::uint64_t {
  kGeneric = 0,
  kInit = 1,
  kDataSample = 2,
  kLhs = 3,
  kSoftTimes = 4,
  kProbe = 5,
};

/// Deterministic 64-bit generator (SplitMix64). The state advances by a
/// fixed odd constant and each output is a finalizer hash of the state, so
/// the stream is reproducible from the seed alone. Streams are derived by
/// offsetting the seed with a large odd multiple of the stream id.
class Prng {
 public:
  explicit Prng(std::uint64_t seed, RngStream stream = RngStream::kGeneric)
      : state_(seed + static_cast<std::uint64_t>(stream) * 0xA0761D6478BD642FULL) {}

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double next_uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, n).
  std::uint64_t next_below(std::uint64_t n) {
    // Rejection-free scaling is fine here: n is tiny relative to 2^64.
    return static_cast<std::uint64_t>(next_uniform() * static_cast<double>(n));
  }

  /// Standard normal via the paired (Box-Muller) transform:
  ///   r = sqrt(-2 ln(1-u1)),  z0 = r cos(2*pi*u2),  z1 = r sin(2*pi*u2).
  /// Odd requests discard the trailing second element of the last pair.
  double next_normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = next_uniform();
    const double u2 = next_uniform();
    const double r = std::sqrt(-2.0 * std::log1p(-u1));
    const double a = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

 private:
  std::uint64_t state_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

inline std::vector<double> prng_uniform(Prng& p, std::size_t n) {
  std::vector<double> out(n);
  for (auto& v : out) v = p.next_uniform();
  return out;
}

inline std::vector<double> prng_normal(Prng& p, std::size_t n) {
  std::vector<double> out(n);
  for (auto& v : out) v = p.next_normal();
  return out;
}

}  // namespace pinnproj
