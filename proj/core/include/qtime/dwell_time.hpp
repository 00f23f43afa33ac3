#pragma once

#include <optional>
#include <vector>

#include "qtime/wavepacket.hpp"

namespace qtime {

struct Region {
  double left_edge;  // ignored for the first region (extends to -inf)
  double height;
};

/// Piecewise-constant potential. The first and last regions extend to -inf
/// and +inf and must have zero potential.
class ScatteringSetup {
 public:
  explicit ScatteringSetup(std::vector<Region> regions);

  static ScatteringSetup free();
  static ScatteringSetup rectangular_barrier(double height, double width, double left = 0.0);

  const std::vector<Region>& regions() const { return regions_; }
  /// Interior interface positions, increasing.
  std::vector<double> edges() const;
  std::size_t region_of(double x) const;

 private:
  std::vector<Region> regions_;
};

/// phi(x, E) with unit-amplitude incidence from the left:
/// exp(ikx) + R exp(-ikx) on the left, T exp(ikx) on the right.
/// Inside region r (r not outer) phi = A exp(iq(x - a_r)) + B exp(-iq(x - a_r)),
/// a_r the left edge, q = sqrt(2 mu (E - V)) / hbar (imaginary under a barrier).
class StationaryState {
 public:
  struct Coefficients {
    cplx a;
    cplx b;
    cplx q;
    double origin;
  };

  StationaryState(double energy, std::vector<Coefficients> coefficients, const ScatteringSetup& setup);

  double energy() const { return energy_; }
  cplx transmission() const { return coefficients_.back().a; }
  cplx reflection() const { return coefficients_.front().b; }
  const std::vector<Coefficients>& coefficients() const { return coefficients_; }

  cplx value(double x) const;
  cplx derivative(double x) const;

 private:
  double energy_;
  std::vector<Coefficients> coefficients_;
  std::vector<double> edges_;
};

/// Throws PreconditionError("degenerate linear solution at band edge") when E
/// equals a region height.
StationaryState solve_stationary(const ScatteringSetup& setup, double energy, const PhysicalConstants& constants);

/// Same, but an energy sitting on a band edge is moved up by 1e-9.
StationaryState solve_stationary_perturbed(const ScatteringSetup& setup, double energy,
                                           const PhysicalConstants& constants);

/// Psi(x, t) = int g(E) phi(x, E) exp(-iEt/hbar) dE over scattering states.
/// Momentum amplitudes are accepted when every populated k is positive.
class ScatteredPacket {
 public:
  ScatteredPacket(const SpectralAmplitude& spectrum, const ScatteringSetup& setup, const PhysicalConstants& constants);

  FieldSlice slice(double x, const Grid1D& time_grid, SliceOptions options = {}) const;
  /// Packet built from the unit-amplitude incoming piece exp(ikx) alone.
  FieldSlice incident_slice(double x, const Grid1D& time_grid, SliceOptions options = {}) const;
  std::vector<cplx> profile(double t, const Grid1D& x_grid) const;

  const PhysicalConstants& constants() const { return constants_; }
  const std::vector<StationaryState>& states() const { return states_; }
  double max_wavenumber() const { return k_max_; }
  /// Flux-weighted arrival statistics of the free incident packet at x = 0.
  double reference_time() const { return t_ref_; }
  double reference_width() const { return dt_ref_; }
  double mean_velocity() const { return v_mean_; }
  double velocity_spread() const { return dv_; }

 private:
  std::vector<cplx> weights_;  // quadrature weight * g * Jacobian
  std::vector<double> freqs_;
  std::vector<double> wavenumbers_;
  std::vector<StationaryState> states_;
  PhysicalConstants constants_;
  double k_max_ = 0.0;
  double t_ref_ = 0.0;
  double dt_ref_ = 0.0;
  double v_mean_ = 0.0;
  double dv_ = 0.0;
};

struct DwellOptions {
  /// Time window for the t-integrals; chosen and widened automatically when empty.
  std::optional<Grid1D> time_grid;
  /// Spatial normalization window for dwell_probability; automatic when empty.
  std::optional<Grid1D> x_window;
  double window_tolerance = 1e-6;
};

/// int_{x1}^{x2} |Psi|^2 dx / int |Psi|^2 dx at time t. Throws
/// PreconditionError("normalization window too small") when the window edges
/// still carry more than window_tolerance of the peak density.
double dwell_probability(const SpectralAmplitude& spectrum, const ScatteringSetup& setup, double x1, double x2,
                         double t, const PhysicalConstants& constants, const DwellOptions& options = {});

/// int dt int_{xi}^{xf} |Psi|^2 dx / int j_in(xi, t) dt.
double mean_dwell_density(const SpectralAmplitude& spectrum, const ScatteringSetup& setup, double xi, double xf,
                          const PhysicalConstants& constants, const DwellOptions& options = {});

/// [int t j(xf, t) dt - int t j(xi, t) dt] / int j_in(xi, t) dt.
double mean_dwell_flux(const SpectralAmplitude& spectrum, const ScatteringSetup& setup, double xi, double xf,
                       const PhysicalConstants& constants, const DwellOptions& options = {});

/// Time window covering the incident and scattered packet at every position
/// in `positions`, widened until the edges decay.
Grid1D scattering_time_grid(const ScatteredPacket& packet, std::span<const double> positions,
                            double tolerance = 1e-6);

}  // namespace qtime
