#pragma once

// Small seeded generators for property tests. Each case is reproducible from
// (seed, index), which the tests print on failure.

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

namespace gen {

class Source {
 public:
  explicit Source(std::uint64_t seed) : engine_(seed) {}
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }
  bool coin() { return integer(0, 1) == 1; }

 private:
  std::mt19937_64 engine_;
};

struct GaussianCase {
  double e0, sigma, x, t0, chirp;
};

/// Admissible Gaussian spectra: E0 - 9 sigma stays above the cutoff.
inline GaussianCase gaussian_case(Source& s, double e0_lo = 2.0, double e0_hi = 10.0, double sig_lo = 0.1,
                                  double sig_hi = 1.0) {
  GaussianCase c{};
  do {
    c.e0 = s.uniform(e0_lo, e0_hi);
    c.sigma = s.uniform(sig_lo, sig_hi);
  } while (c.e0 - 9.0 * c.sigma < 0.01);
  c.x = s.uniform(0.0, 20.0);
  c.t0 = s.uniform(-3.0, 3.0);
  c.chirp = s.uniform(-0.2, 0.2) / (c.sigma * c.sigma);
  return c;
}

inline std::vector<std::complex<double>> complex_vector(Source& s, std::size_t n) {
  std::vector<std::complex<double>> v(n);
  for (auto& z : v) z = {s.uniform(-1.0, 1.0), s.uniform(-1.0, 1.0)};
  return v;
}

}  // namespace gen
