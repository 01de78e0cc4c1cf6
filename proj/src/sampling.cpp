#include "acpb/sampling.hpp"

namespace acpb {

std::vector<Vec> box_samples(const Vec& lo, const Vec& hi, int count,
                             std::uint64_t seed) {
  static const int primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  const int n = static_cast<int>(lo.size());
  if (n > static_cast<int>(sizeof(primes) / sizeof(primes[0])))
    throw DimensionError("box_samples: dimension too large for Halton bases");
  SampleRng rng(seed);
  Vec shift = rng.vector(n, 0.0, 1.0);
  std::vector<Vec> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) {
    Vec x(n);
    for (int d = 0; d < n; ++d) {
      double u = halton(static_cast<std::uint64_t>(i) + 1, primes[d]) + shift[d];
      u -= std::floor(u);
      x[d] = lo[d] + (hi[d] - lo[d]) * u;
    }
    out.push_back(std::move(x));
  }
  return out;
}

}  // namespace acpb
