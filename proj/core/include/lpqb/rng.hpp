#pragma once

#include <cstdint>
#include <random>

namespace lpqb {

/// Mixes up to three 64-bit words into a substream key (splitmix64 finalizer
/// applied per word). Used to derive disjoint, order-independent RNG streams
/// from (seed, replication, purpose)-style tuples.
std::uint64_t mix_key(std::uint64_t a, std::uint64_t b = 0x6a09e667f3bcc909ULL,
                      std::uint64_t c = 0xbb67ae8584caa73bULL);

/// Deterministic random stream keyed by (seed, stream id). Distribution
/// transforms are implemented here rather than with std:: distributions so
/// that draws are identical across standard-library implementations.
class RngStream {
 public:
  explicit RngStream(std::uint64_t key);
  RngStream(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1) with 53-bit resolution.
  double uniform();

  /// Standard normal (Marsaglia polar, second value cached).
  double normal();

  /// Gamma(shape, rate) via Marsaglia-Tsang; shape boost for shape < 1.
  double gamma(double shape, double rate);

  /// Inverse-gamma(shape, rate): density proportional to
  /// x^{-(shape+1)} exp(-rate / x).
  double inverse_gamma(double shape, double rate);

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace lpqb
