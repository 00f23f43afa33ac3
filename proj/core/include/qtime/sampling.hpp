#pragma once

#include <cstdint>
#include <random>

#include "qtime/wavepacket.hpp"

namespace qtime {

/// mt19937_64 with uniforms built from the top 53 bits, so sequences are
/// identical across standard libraries.
class DeterministicRng {
 public:
  explicit DeterministicRng(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  std::size_t index(std::size_t n) { return static_cast<std::size_t>(uniform() * static_cast<double>(n)); }

 private:
  std::mt19937_64 engine_;
};

/// Energy grid E0 +/- 9 sigma with `steps_per_sigma` samples per sigma. The
/// lower end is clamped to the cutoff.
Grid1D default_energy_grid(double center, double width, double steps_per_sigma = 200.0, double cutoff = 0.01);

/// Momentum grid k0 +/- 9 sigma_k; the lower end is clamped to the cutoff.
Grid1D default_momentum_grid(double center, double width, double steps_per_sigma = 100.0, double cutoff = 0.01);

/// Gaussian in E times exp(i E t0 / hbar) exp(i chirp (E - E0)^2), normalized
/// to int v|g|^2 dE = 1.
SpectralAmplitude chirped_gaussian(double center, double width, double time_shift, double chirp,
                                   const PhysicalConstants& constants, double steps_per_sigma = 200.0);

struct SpectrumRanges {
  double e0_lo = 2.0, e0_hi = 10.0;
  double sigma_lo = 0.1, sigma_hi = 1.0;
  double x_lo = 0.0, x_hi = 20.0;
  double shift_lo = 1.0, shift_hi = 5.0;
  double chirp_lo = -0.2, chirp_hi = 0.2;  // in units of 1 / sigma^2
};

struct SampledSpectrum {
  double e0;
  double sigma;
  double x;
  double time_shift;
  double chirp;
  SpectralAmplitude spectrum;
};

/// Draws (E0, sigma) until E0 - 9 sigma clears the cutoff, then x, t0 and the
/// chirp, and builds the chirped Gaussian.
SampledSpectrum sample_admissible_spectrum(DeterministicRng& rng, const PhysicalConstants& constants,
                                           const SpectrumRanges& ranges = {}, double steps_per_sigma = 200.0);

}  // namespace qtime
