#ifndef ACPB_SAMPLING_HPP
#define ACPB_SAMPLING_HPP

#include <cstdint>
#include <random>
#include <vector>

#include "acpb/types.hpp"

namespace acpb {

/// Deterministic uniform sampling helpers. std::mt19937_64 is seeded
/// explicitly and doubles are produced by fixed bit manipulation, so a
/// given seed yields the same stream on every platform.
class SampleRng {
 public:
  explicit SampleRng(std::uint64_t seed) : eng_(seed) {}

  double uniform() {  // in [0, 1)
    return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
  }
  double uniform(double a, double b) { return a + (b - a) * uniform(); }

  Vec vector(int n, double a, double b) {
    Vec v(n);
    for (int i = 0; i < n; ++i) v[i] = uniform(a, b);
    return v;
  }

  /// Standard normal via Box-Muller on the deterministic uniforms.
  double normal() {
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
  }

  Vec unit_vector(int n) {
    Vec v(n);
    do {
      for (int i = 0; i < n; ++i) v[i] = normal();
    } while (v.norm() < 1e-8);
    return v / v.norm();
  }

  std::uint64_t raw() { return eng_(); }

 private:
  std::mt19937_64 eng_;
};

inline double halton(std::uint64_t index, int base) {
  double f = 1.0, r = 0.0;
  while (index > 0) {
    f /= base;
    r += f * static_cast<double>(index % base);
    index /= base;
  }
  return r;
}

/// Low-discrepancy points in a box: Halton sequence with a seeded
/// toroidal shift, reproducible for a fixed seed.
std::vector<Vec> box_samples(const Vec& lo, const Vec& hi, int count,
                             std::uint64_t seed);

}  // namespace acpb

#endif
