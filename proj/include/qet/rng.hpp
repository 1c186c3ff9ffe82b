#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace qet {

/// splitmix64 finalizer; used to derive well-separated substream seeds.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Deterministic random stream. Substreams are derived from a master seed
/// and an index, so records/trials can be simulated in any order (or in
/// parallel) with reproducible results. Streams are caller-owned and must
/// not be shared across threads.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : gen_(seed) {}

  static RngStream substream(std::uint64_t master, std::uint64_t index) {
    return RngStream(mix64(master ^ mix64(index + 1)));
  }

  std::uint64_t next_u64() { return gen_(); }

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  /// Standard normal deviate (Box-Muller, cached spare).
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    while (u1 == 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double t = 2.0 * M_PI * u2;
    spare_ = r * std::sin(t);
    have_spare_ = true;
    return r * std::cos(t);
  }

 private:
  std::mt19937_64 gen_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace qet
