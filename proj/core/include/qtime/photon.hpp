#pragma once

#include <vector>

#include "qtime/numerics.hpp"
#include "qtime/physical_constants.hpp"

namespace qtime {

struct PhotonLimits {
  double edge_decay = 1e-8;  // non-positive disables the check
};

/// chi(k) on a grid with k > 0, one linear polarization.
class PhotonSpectrum {
 public:
  PhotonSpectrum(Grid1D k_grid, std::vector<cplx> chi, PhotonLimits limits = {});

  const Grid1D& grid() const { return grid_; }
  std::span<const cplx> chi() const { return chi_; }

 private:
  Grid1D grid_;
  std::vector<cplx> chi_;
};

/// exp(-(k - k0)^2 / (4 width^2)) normalized to int |chi|^2 dk = 1.
PhotonSpectrum gaussian_photon_spectrum(double k0, double width, const Grid1D& k_grid, PhotonLimits limits = {});

/// Multiplies chi by exp(i c k t0); delays the packet by t0.
PhotonSpectrum with_time_shift(const PhotonSpectrum& spectrum, double t0, const PhysicalConstants& constants);

/// Vector potential and fields at fixed x:
///   A = int (dk/k) chi exp(i(kx - ckt)),  E = -(1/c) dA/dt,  H = dA/dx.
struct EMSlice {
  double position;
  Grid1D time_grid;
  std::vector<cplx> a;
  std::vector<cplx> e;
  std::vector<cplx> h;
};

/// The same fields over x at fixed t.
struct EMProfile {
  double time;
  Grid1D x_grid;
  std::vector<cplx> a;
  std::vector<cplx> e;
  std::vector<cplx> h;
};

struct EMOptions {
  double window_tolerance = 1e-6;  // non-positive disables the edge guard
};

EMSlice synthesize_em(const PhotonSpectrum& spectrum, double x, const Grid1D& time_grid,
                      const PhysicalConstants& constants, EMOptions options = {});

EMProfile em_profile(const PhotonSpectrum& spectrum, double t, const Grid1D& x_grid, const PhysicalConstants& constants);

struct EMDensities {
  std::vector<double> s0;
  std::vector<double> sx;
};

/// s0 = (|E|^2 + |H|^2) / 16 pi, sx = c Re[E* H] / 8 pi. With complex
/// (analytic-signal) fields these are the cycle averages of the real-field
/// densities, and s0 is transported at exactly c.
EMDensities em_densities(std::span<const cplx> e, std::span<const cplx> h, const PhysicalConstants& constants);
EMDensities em_densities(const EMSlice& slice, const PhysicalConstants& constants);

/// max_t |ds0/dt + (sx(x+dx) - sx(x-dx)) / (2 dx)|, relative to max_t |ds0/dt|.
double em_continuity_residual(const PhotonSpectrum& spectrum, double x, double dx, const Grid1D& time_grid,
                              const PhysicalConstants& constants, EMOptions options = {});

/// <t^n> under the normalized sx weight at x. Throws
/// PreconditionError("zero flux: time measure undefined") when int sx dt == 0.
double photon_mean_time(const PhotonSpectrum& spectrum, double x, const Grid1D& time_grid,
                        const PhysicalConstants& constants, int order = 1);

/// <t^n> in the energy representation with E = hbar c k and t = -i hbar d/dE;
/// exp(ikx) is differentiated analytically (tau = x / c).
double photon_mean_time_energy_rep(const PhotonSpectrum& spectrum, double x, const PhysicalConstants& constants,
                                   int order = 1);

/// Window centred on the passage at x, +/- half_widths * Delta t.
Grid1D suggest_photon_time_grid(const PhotonSpectrum& spectrum, double x, const PhysicalConstants& constants,
                                double half_widths = 12.0, double per_width = 60.0);

}  // namespace qtime
