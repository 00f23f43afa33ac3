#pragma once

#include <functional>
#include <map>
#include <optional>

#include "qtime/wavepacket.hpp"

namespace qtime {

enum class MeasureKind { flux, flux_plus, flux_minus, density };
enum class FluxSign { both, plus, minus };

/// Normalized weight w(t) over a time grid.
struct TimeMeasure {
  Grid1D time_grid;
  std::vector<double> weight;
  MeasureKind kind;
};

struct TemporalStats {
  double mean = 0.0;
  double variance = 0.0;
  /// Central moments of order >= 3.
  std::map<int, double> higher;
  /// Set when a signed flux measure produced a negative variance.
  bool indefinite = false;
};

/// W(x,t) = j_sel / int j_sel dt with j_sel = j, j*theta(j) or j*theta(-j).
/// Samples with j == 0 belong to neither signed measure.
TimeMeasure flux_measure(const Grid1D& time_grid, std::span<const double> j, FluxSign sign);

/// rho(x,t) / int rho dt.
TimeMeasure density_measure(const Grid1D& time_grid, std::span<const double> rho);

double moment_time_rep(const TimeMeasure& measure, const std::function<double(double)>& f);
double moment_time_rep(const TimeMeasure& measure, int order);

TemporalStats temporal_stats(const TimeMeasure& measure, int max_order = 4);

/// <t^n> in the energy representation with t = -i hbar d/dE:
///   int 1/2 [G* t^n (vG) + v G* t^n G] dE / int v|G|^2 dE,  G = g exp(ikx).
/// The exp(ikx) factor is differentiated analytically (dk/dE = 1/(hbar v)).
/// Throws PreconditionError("hermiticity violation: check grids") when the
/// imaginary residue exceeds 1e-6 of the integrand scale.
double moment_energy_rep(const SpectralAmplitude& spectrum, double x, int order, const PhysicalConstants& constants);

/// The same ratio before the hermiticity check; its imaginary part is the
/// boundary term -(hbar/2)[v|g|^2] for order 1.
cplx moment_energy_rep_complex(const SpectralAmplitude& spectrum, double x, int order,
                               const PhysicalConstants& constants);

/// Mean passage time with the bilinear operator (-i hbar / 2) d<->/dE. No
/// decay condition at the low energy edge is required.
double bilinear_mean_time(const SpectralAmplitude& spectrum, double x, const PhysicalConstants& constants);

struct UncertaintyProduct {
  double delta_e = 0.0;
  double delta_t = 0.0;
  double product = 0.0;
  bool bound_satisfied = false;  // product >= hbar/2 - 1e-9
};

/// Delta E from the v|G|^2 dE weight, Delta t from the flux measure at x.
UncertaintyProduct uncertainty_product(const SpectralAmplitude& spectrum, double x, const PhysicalConstants& constants,
                                       std::optional<Grid1D> time_grid = std::nullopt);

/// <E> and Var(E) under the v|g|^2 dE weight.
std::pair<double, double> energy_mean_variance(const SpectralAmplitude& spectrum, const PhysicalConstants& constants);

/// Time window centred on the flux-weighted arrival at x: mean +/- half_widths
/// * Delta t, sampled with `per_width` points per Delta t.
Grid1D suggest_time_grid(const SpectralAmplitude& spectrum, double x, const PhysicalConstants& constants,
                         double half_widths = 12.0, double per_width = 60.0);

}  // namespace qtime
