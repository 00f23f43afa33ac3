#pragma once

#include <vector>

#include "qtime/numerics.hpp"
#include "qtime/physical_constants.hpp"

namespace qtime {

enum class Representation { energy, momentum };

/// Admissibility limits for spectral grids and amplitudes.
struct SpectralLimits {
  /// Energy grids must start at or above this value; momentum samples must
  /// satisfy |k| >= cutoff. Keeps E = 0 / k = 0 off the grid.
  double cutoff = 0.01;
  /// |g| at both grid ends must be below edge_decay * max|g|. Non-positive
  /// disables the check (packets that do not vanish at the low edge).
  double edge_decay = 1e-8;
};

/// g(E) or g(k) sampled on a spectral grid.
class SpectralAmplitude {
 public:
  SpectralAmplitude(Representation rep, Grid1D grid, std::vector<cplx> values, SpectralLimits limits = {});

  Representation representation() const { return rep_; }
  const Grid1D& grid() const { return grid_; }
  std::span<const cplx> values() const { return values_; }
  const SpectralLimits& limits() const { return limits_; }
  ComplexSeries series() const { return ComplexSeries(grid_, values_); }

  /// Energy of each spectral sample.
  double energy_at(std::size_t i, const PhysicalConstants& constants) const;
  /// Signed wavenumber of each spectral sample.
  double wavenumber_at(std::size_t i, const PhysicalConstants& constants) const;

 private:
  Representation rep_;
  Grid1D grid_;
  std::vector<cplx> values_;
  SpectralLimits limits_;
};

/// Psi(x, t) and dPsi/dx(x, t) at a fixed x.
struct FieldSlice {
  double position;
  Grid1D time_grid;
  std::vector<cplx> psi;
  std::vector<cplx> dpsi_dx;
};

struct DensityFlux {
  std::vector<double> rho;
  std::vector<double> j;
};

/// (g(+k(E)), g(-k(E))) with the (mu / 2 E hbar^2)^(1/4) Jacobian factor.
struct TwoComponentWeight {
  Grid1D energy_grid;
  std::vector<cplx> plus;
  std::vector<cplx> minus;
};

/// exp(-(xi - center)^2 / (4 width^2)), normalized to int v|g|^2 dE = 1 in the
/// energy representation and int |g|^2 dk = 1 in the momentum representation.
SpectralAmplitude gaussian_spectrum(double center, double width, Representation rep, const Grid1D& grid,
                                    const PhysicalConstants& constants, SpectralLimits limits = {});

/// Multiplies g by exp(i E t0 / hbar); with exp(-iEt/hbar) packets this delays
/// every arrival by +t0.
SpectralAmplitude with_time_shift(const SpectralAmplitude& spectrum, double t0, const PhysicalConstants& constants);

/// int v |g|^2 dE (energy) or int |g|^2 dk (momentum).
double spectral_norm(const SpectralAmplitude& spectrum, const PhysicalConstants& constants);

struct SliceOptions {
  /// |psi| at the window edges must stay below this fraction of the peak.
  /// Non-positive disables the guard (stationary / plane-wave inputs).
  double window_tolerance = 1e-6;
};

/// Psi(x, t) = int g(E) exp(ikx) exp(-iEt/hbar) dE for free motion; the
/// spatial derivative is taken spectrally (factor ik).
FieldSlice synthesize_slice(const SpectralAmplitude& spectrum, double x, const Grid1D& time_grid,
                            const PhysicalConstants& constants, SliceOptions options = {});

/// Psi(x, t) over a spatial grid at fixed t.
std::vector<cplx> synthesize_profile(const SpectralAmplitude& spectrum, double t, const Grid1D& x_grid,
                                     const PhysicalConstants& constants);

/// rho = |Psi|^2, j = (hbar/mu) Im[Psi* dPsi/dx].
DensityFlux density_flux(const FieldSlice& slice, const PhysicalConstants& constants);

/// max_t |drho/dt + (j(x+dx) - j(x-dx)) / (2 dx)| / max_t |drho/dt|.
double continuity_residual(const SpectralAmplitude& spectrum, double x, double dx, const Grid1D& time_grid,
                           const PhysicalConstants& constants, SliceOptions options = {});

/// Two-component energy weight of a momentum amplitude, resampled by cubic
/// interpolation onto `energy_grid`.
TwoComponentWeight momentum_to_two_component(const SpectralAmplitude& spectrum, const Grid1D& energy_grid,
                                             const PhysicalConstants& constants);

/// int (|plus|^2 + |minus|^2) dE.
double two_component_norm(const TwoComponentWeight& weight);

/// Energy amplitude g_E(E) = g(k(E)) dk/dE of a one-directional (k > 0)
/// momentum packet, so both syntheses describe the same Psi.
SpectralAmplitude momentum_to_energy_amplitude(const SpectralAmplitude& spectrum, const Grid1D& energy_grid,
                                               const PhysicalConstants& constants, SpectralLimits limits = {});

/// Energy amplitude describing the same packet: the input itself for the
/// energy representation, otherwise momentum_to_energy_amplitude on an energy
/// grid covering the k > 0 support (4x the sample count, decay check off).
SpectralAmplitude as_energy_amplitude(const SpectralAmplitude& spectrum, const PhysicalConstants& constants);

}  // namespace qtime
