#include "qtime/sampling.hpp"

#include <algorithm>
#include <cmath>

namespace qtime {

namespace {

Grid1D centred_grid(double center, double width, double steps_per_sigma, double cutoff) {
  if (!(width > 0.0) || !(steps_per_sigma >= 1.0)) throw PreconditionError("spectral width must be positive");
  const double lo = std::max(cutoff, center - 9.0 * width);
  const double hi = center + 9.0 * width;
  if (!(hi > lo)) throw PreconditionError("energy grid must exclude E = 0");
  auto intervals = static_cast<std::size_t>(std::ceil((hi - lo) / width * steps_per_sigma));
  intervals += intervals % 2;
  return Grid1D::span(lo, hi, intervals + 1);
}

}  // namespace

Grid1D default_energy_grid(double center, double width, double steps_per_sigma, double cutoff) {
  return centred_grid(center, width, steps_per_sigma, cutoff);
}

Grid1D default_momentum_grid(double center, double width, double steps_per_sigma, double cutoff) {
  return centred_grid(center, width, steps_per_sigma, cutoff);
}

SpectralAmplitude chirped_gaussian(double center, double width, double time_shift, double chirp,
                                   const PhysicalConstants& constants, double steps_per_sigma) {
  const Grid1D grid = default_energy_grid(center, width, steps_per_sigma);
  const auto base = gaussian_spectrum(center, width, Representation::energy, grid, constants);
  std::vector<cplx> values(base.values().begin(), base.values().end());
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double d = grid.point(i) - center;
    values[i] *= std::polar(1.0, chirp * d * d);
  }
  return with_time_shift(SpectralAmplitude(Representation::energy, grid, std::move(values)), time_shift, constants);
}

SampledSpectrum sample_admissible_spectrum(DeterministicRng& rng, const PhysicalConstants& constants,
                                           const SpectrumRanges& ranges, double steps_per_sigma) {
  const double cutoff = SpectralLimits{}.cutoff;
  double e0 = 0.0, sigma = 0.0;
  do {
    e0 = rng.uniform(ranges.e0_lo, ranges.e0_hi);
    sigma = rng.uniform(ranges.sigma_lo, ranges.sigma_hi);
  } while (e0 - 9.0 * sigma < cutoff);
  const double x = rng.uniform(ranges.x_lo, ranges.x_hi);
  const double shift = rng.uniform(ranges.shift_lo, ranges.shift_hi);
  const double chirp = rng.uniform(ranges.chirp_lo, ranges.chirp_hi) / (sigma * sigma);
  return {e0, sigma, x, shift, chirp, chirped_gaussian(e0, sigma, shift, chirp, constants, steps_per_sigma)};
}

}  // namespace qtime
