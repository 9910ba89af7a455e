#pragma once

#include <array>
#include <cstdint>

/// Counter-based random numbers: Philox4x32-10 (Salmon et al., Random123).
///
/// Splitting rule: replicate i of a run with master seed s draws from the
/// stream keyed by replicate_seed(s, i) = splitmix64(s ^ splitmix64(i)).
/// Within a stream, block b is Philox(counter = (b_lo, b_hi, 0, 0), key =
/// (seed_lo, seed_hi)); every block yields two uniforms and, through
/// Box-Muller, two standard normals. The output depends only on
/// (seed, draw index), never on thread count or platform RNG libraries.
namespace sphex::random {

using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

PhiloxCounter philox4x32_10(PhiloxCounter counter, PhiloxKey key);

std::uint64_t splitmix64(std::uint64_t x);

std::uint64_t replicate_seed(std::uint64_t master_seed, std::uint64_t replicate);

class Stream {
 public:
  explicit Stream(std::uint64_t seed);

  /// Uniform on the open interval (0, 1), 53-bit resolution.
  double uniform();
  double normal();

 private:
  void refill();

  PhiloxKey key_;
  std::uint64_t block_ = 0;
  PhiloxCounter buffer_{};
  int used_ = 4;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace sphex::random
