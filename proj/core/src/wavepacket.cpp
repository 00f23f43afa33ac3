#include "qtime/wavepacket.hpp"

#include <algorithm>
#include <cmath>

namespace qtime {

SpectralAmplitude::SpectralAmplitude(Representation rep, Grid1D grid, std::vector<cplx> values,
                                     SpectralLimits limits)
    : rep_(rep), grid_(grid), values_(std::move(values)), limits_(limits) {
  if (values_.size() != grid_.count()) throw PreconditionError("spectral values do not match grid");
  if (rep_ == Representation::energy) {
    if (grid_.start() < limits_.cutoff || grid_.start() <= 0.0) {
      throw PreconditionError("energy grid must exclude E = 0");
    }
  } else {
    for (std::size_t i = 0; i < grid_.count(); ++i) {
      if (std::abs(grid_.point(i)) < limits_.cutoff) throw PreconditionError("momentum grid must exclude k = 0");
    }
  }
  if (limits_.edge_decay > 0.0 && !edges_decayed(values_, limits_.edge_decay)) {
    throw NumericalGuardError("spectrum not confined");
  }
}

double SpectralAmplitude::energy_at(std::size_t i, const PhysicalConstants& constants) const {
  const double xi = grid_.point(i);
  return rep_ == Representation::energy ? xi : constants.energy_of_k(xi);
}

double SpectralAmplitude::wavenumber_at(std::size_t i, const PhysicalConstants& constants) const {
  const double xi = grid_.point(i);
  return rep_ == Representation::energy ? constants.wavenumber(xi) : xi;
}

SpectralAmplitude gaussian_spectrum(double center, double width, Representation rep, const Grid1D& grid,
                                    const PhysicalConstants& constants, SpectralLimits limits) {
  constants.validate();
  if (!(width > 0.0)) throw PreconditionError("spectral width must be positive");
  if (rep == Representation::energy && !(center - 6.0 * width > grid.start())) {
    throw NumericalGuardError("spectrum not confined");
  }
  std::vector<cplx> values(grid.count());
  for (std::size_t i = 0; i < grid.count(); ++i) {
    const double d = grid.point(i) - center;
    values[i] = std::exp(-d * d / (4.0 * width * width));
  }
  SpectralAmplitude raw(rep, grid, values, limits);
  const double scale = 1.0 / std::sqrt(spectral_norm(raw, constants));
  for (auto& v : values) v *= scale;
  return SpectralAmplitude(rep, grid, std::move(values), limits);
}

SpectralAmplitude with_time_shift(const SpectralAmplitude& spectrum, double t0, const PhysicalConstants& constants) {
  std::vector<cplx> values(spectrum.values().begin(), spectrum.values().end());
  for (std::size_t i = 0; i < values.size(); ++i) {
    values[i] *= std::polar(1.0, spectrum.energy_at(i, constants) * t0 / constants.hbar);
  }
  return SpectralAmplitude(spectrum.representation(), spectrum.grid(), std::move(values), spectrum.limits());
}

double spectral_norm(const SpectralAmplitude& spectrum, const PhysicalConstants& constants) {
  const auto& grid = spectrum.grid();
  std::vector<double> density(grid.count());
  for (std::size_t i = 0; i < grid.count(); ++i) {
    const double g2 = std::norm(spectrum.values()[i]);
    density[i] = spectrum.representation() == Representation::energy ? constants.velocity(grid.point(i)) * g2 : g2;
  }
  return integrate(grid, density);
}

namespace {

struct PlaneWaveSum {
  std::vector<cplx> coeffs;
  std::vector<double> freqs;
  std::vector<double> wavenumbers;
};

// Quadrature-weighted plane-wave content of the packet at position x.
PlaneWaveSum plane_waves_at(const SpectralAmplitude& spectrum, double x, const PhysicalConstants& constants) {
  const auto w = quadrature_weights(spectrum.grid());
  PlaneWaveSum out;
  const std::size_t n = w.size();
  out.coeffs.resize(n);
  out.freqs.resize(n);
  out.wavenumbers.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double k = spectrum.wavenumber_at(i, constants);
    out.wavenumbers[i] = k;
    out.freqs[i] = spectrum.energy_at(i, constants) / constants.hbar;
    out.coeffs[i] = w[i] * spectrum.values()[i] * std::polar(1.0, k * x);
  }
  return out;
}

void guard_window(std::span<const cplx> psi, double tolerance) {
  if (tolerance > 0.0 && !edges_decayed(psi, tolerance)) throw NumericalGuardError("time window too small");
}

}  // namespace

FieldSlice synthesize_slice(const SpectralAmplitude& spectrum, double x, const Grid1D& time_grid,
                            const PhysicalConstants& constants, SliceOptions options) {
  constants.validate();
  auto waves = plane_waves_at(spectrum, x, constants);
  FieldSlice slice{x, time_grid, synthesize_on_grid(waves.coeffs, waves.freqs, time_grid), {}};
  for (std::size_t i = 0; i < waves.coeffs.size(); ++i) waves.coeffs[i] *= cplx(0.0, waves.wavenumbers[i]);
  slice.dpsi_dx = synthesize_on_grid(waves.coeffs, waves.freqs, time_grid);
  guard_window(slice.psi, options.window_tolerance);
  return slice;
}

std::vector<cplx> synthesize_profile(const SpectralAmplitude& spectrum, double t, const Grid1D& x_grid,
                                     const PhysicalConstants& constants) {
  constants.validate();
  auto waves = plane_waves_at(spectrum, 0.0, constants);
  // Swap roles: the time phase is folded into the coefficient, -k plays the frequency.
  for (std::size_t i = 0; i < waves.coeffs.size(); ++i) {
    waves.coeffs[i] *= std::polar(1.0, -waves.freqs[i] * t);
    waves.freqs[i] = -waves.wavenumbers[i];
  }
  return synthesize_on_grid(waves.coeffs, waves.freqs, x_grid);
}

DensityFlux density_flux(const FieldSlice& slice, const PhysicalConstants& constants) {
  DensityFlux out;
  out.rho.resize(slice.psi.size());
  out.j.resize(slice.psi.size());
  const double scale = constants.hbar / constants.mass;
  for (std::size_t i = 0; i < slice.psi.size(); ++i) {
    out.rho[i] = std::norm(slice.psi[i]);
    out.j[i] = scale * std::imag(std::conj(slice.psi[i]) * slice.dpsi_dx[i]);
  }
  return out;
}

double continuity_residual(const SpectralAmplitude& spectrum, double x, double dx, const Grid1D& time_grid,
                           const PhysicalConstants& constants, SliceOptions options) {
  if (!(dx > 0.0)) throw PreconditionError("dx must be positive");
  const auto centre = density_flux(synthesize_slice(spectrum, x, time_grid, constants, options), constants);
  const auto left = density_flux(synthesize_slice(spectrum, x - dx, time_grid, constants, options), constants);
  const auto right = density_flux(synthesize_slice(spectrum, x + dx, time_grid, constants, options), constants);
  const auto drho_dt = derivative(time_grid, centre.rho);
  double worst = 0.0;
  for (std::size_t i = 0; i < drho_dt.size(); ++i) {
    const double r = drho_dt[i] + (right.j[i] - left.j[i]) / (2.0 * dx);
    worst = std::max(worst, std::abs(r));
  }
  // A stationary packet has drho/dt == 0; scale by the slowest meaningful rate.
  const double window = time_grid.last() - time_grid.start();
  const double scale = std::max(peak_magnitude(drho_dt), peak_magnitude(centre.rho) / window);
  return scale > 0.0 ? worst / scale : worst;
}

TwoComponentWeight momentum_to_two_component(const SpectralAmplitude& spectrum, const Grid1D& energy_grid,
                                             const PhysicalConstants& constants) {
  if (spectrum.representation() != Representation::momentum) {
    throw PreconditionError("two-component weight needs a momentum amplitude");
  }
  if (energy_grid.start() <= 0.0) throw PreconditionError("energy grid must exclude E = 0");
  const auto& kgrid = spectrum.grid();
  const double k_top = constants.wavenumber(energy_grid.last());
  const bool has_positive = kgrid.last() > 0.0;
  const bool has_negative = kgrid.start() < 0.0;
  if ((has_positive && kgrid.last() < k_top) || (has_negative && -kgrid.start() < k_top)) {
    throw PreconditionError("momentum support insufficient");
  }
  TwoComponentWeight out{energy_grid, std::vector<cplx>(energy_grid.count()), std::vector<cplx>(energy_grid.count())};
  const double h2 = constants.hbar * constants.hbar;
  for (std::size_t i = 0; i < energy_grid.count(); ++i) {
    const double e = energy_grid.point(i);
    const double k = constants.wavenumber(e);
    const double jacobian = std::pow(constants.mass / (2.0 * e * h2), 0.25);
    out.plus[i] = has_positive ? jacobian * interpolate_cubic(kgrid, spectrum.values(), k) : cplx{};
    out.minus[i] = has_negative ? jacobian * interpolate_cubic(kgrid, spectrum.values(), -k) : cplx{};
  }
  return out;
}

double two_component_norm(const TwoComponentWeight& weight) {
  std::vector<double> density(weight.plus.size());
  for (std::size_t i = 0; i < density.size(); ++i) density[i] = std::norm(weight.plus[i]) + std::norm(weight.minus[i]);
  return integrate(weight.energy_grid, density);
}

SpectralAmplitude momentum_to_energy_amplitude(const SpectralAmplitude& spectrum, const Grid1D& energy_grid,
                                               const PhysicalConstants& constants, SpectralLimits limits) {
  if (spectrum.representation() != Representation::momentum) {
    throw PreconditionError("expected a momentum amplitude");
  }
  const auto& kgrid = spectrum.grid();
  const double peak = peak_magnitude(spectrum.values());
  for (std::size_t i = 0; i < kgrid.count(); ++i) {
    if (kgrid.point(i) < 0.0 && std::abs(spectrum.values()[i]) > 1e-8 * peak) {
      throw PreconditionError("packet not one-directional");
    }
  }
  if (kgrid.last() < constants.wavenumber(energy_grid.last())) throw PreconditionError("momentum support insufficient");
  std::vector<cplx> values(energy_grid.count());
  for (std::size_t i = 0; i < energy_grid.count(); ++i) {
    const double k = constants.wavenumber(energy_grid.point(i));
    const double dk_de = constants.mass / (constants.hbar * constants.hbar * k);
    values[i] = dk_de * interpolate_cubic(kgrid, spectrum.values(), k);
  }
  return SpectralAmplitude(Representation::energy, energy_grid, std::move(values), limits);
}

SpectralAmplitude as_energy_amplitude(const SpectralAmplitude& spectrum, const PhysicalConstants& constants) {
  if (spectrum.representation() == Representation::energy) return spectrum;
  const auto& kgrid = spectrum.grid();
  const double k_lo = std::max(kgrid.start(), spectrum.limits().cutoff);
  const double e_lo = constants.energy_of_k(k_lo);
  const double e_hi = constants.energy_of_k(kgrid.last());
  if (!(e_hi > e_lo)) throw PreconditionError("packet not one-directional");
  const Grid1D egrid = Grid1D::span(e_lo, e_hi, 4 * kgrid.count() + 1);
  return momentum_to_energy_amplitude(spectrum, egrid, constants, {e_lo, 0.0});
}

}  // namespace qtime
