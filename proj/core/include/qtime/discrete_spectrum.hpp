#pragma once

#include <functional>
#include <vector>

#include "qtime/numerics.hpp"
#include "qtime/physical_constants.hpp"

namespace qtime {

enum class CatalogKind { harmonic_oscillator, rigid_box };

/// Largest D with every spacing levels[n] - levels[0] an integer multiple of D
/// within rel_tol. Throws PreconditionError("incommensurate spectrum") when
/// no such D exists with multiples below 1e6.
double commensurate_divisor(std::span<const double> levels, double rel_tol = 1e-9);

/// Superposition of bound states with a commensurate spectrum.
class BoundSystem {
 public:
  using Eigenfunction = std::function<double(std::size_t n, double x)>;

  BoundSystem(std::vector<double> levels, Eigenfunction eigenfunction, Grid1D x_grid, std::vector<cplx> coefficients,
              double probe, const PhysicalConstants& constants);

  const std::vector<double>& levels() const { return levels_; }
  const std::vector<cplx>& coefficients() const { return coefficients_; }
  const Grid1D& x_grid() const { return x_grid_; }
  std::size_t size() const { return levels_.size(); }
  double divisor() const { return divisor_; }
  double period() const { return period_; }
  /// N_n = (E_n - E_0) / D, rounded.
  const std::vector<long long>& multiples() const { return multiples_; }
  /// Default off-node probe position.
  double probe() const { return probe_; }
  const PhysicalConstants& constants() const { return constants_; }

  double eigenfunction(std::size_t n, double x) const { return eigenfunction_(n, x); }
  /// A_n = g_n phi_n(x).
  std::vector<cplx> amplitudes(double x) const;
  /// Largest |<phi_m, phi_n> - delta_mn| on the x grid.
  double orthonormality_error() const;

  BoundSystem with_coefficients(std::vector<cplx> coefficients) const;

 private:
  std::vector<double> levels_;
  Eigenfunction eigenfunction_;
  Grid1D x_grid_;
  std::vector<cplx> coefficients_;
  double probe_;
  PhysicalConstants constants_;
  double divisor_ = 0.0;
  double period_ = 0.0;
  std::vector<long long> multiples_;
};

struct CatalogParams {
  double omega = 1.0;          // oscillator frequency
  double box_width = 3.141592653589793;
};

/// Oscillator E_n = hbar omega (n + 1/2), n = 0..; rigid box
/// E_n = n^2 pi^2 hbar^2 / (2 mu L^2), n = 1... Coefficients are normalized
/// to sum |g_n|^2 = 1. Throws PreconditionError("no evolution with one bound
/// state") for fewer than two levels.
BoundSystem build_catalog_system(CatalogKind kind, std::size_t levels, std::vector<cplx> coefficients,
                                 const PhysicalConstants& constants, CatalogParams params = {});

/// psi(x, t) = sum g_n phi_n(x) exp(-i (E_n - E_0) t / hbar), t first reduced
/// onto one cycle.
cplx evolve(const BoundSystem& system, double x, double t);

/// t reduced into (-T/2, T/2].
double sawtooth(double t, double period);

/// int saw(t)^n |psi(x,t)|^2 dt / int |psi(x,t)|^2 dt over one cycle.
/// Throws PreconditionError("node point") where sum |g_n phi_n(x)|^2 vanishes.
double mean_time_discrete(const BoundSystem& system, double x, int order = 1);

/// <t(x)> from the amplitudes in the energy representation:
///   (i hbar / a) sum_{n > n'} (-1)^(N_n - N_n') (A_n'^* A_n - A_n^* A_n') / (E_n - E_n'),
/// a = sum |A_n|^2, reduced into (-T/2, T/2].
double time_operator_energy_rep(const BoundSystem& system, double x);

/// Same from explicit levels and amplitudes; T = 2 pi hbar / divisor.
double time_operator_amplitudes(std::span<const double> levels, std::span<const cplx> amplitudes, double divisor,
                                const PhysicalConstants& constants);

/// Two-level bilinear form with prefactor -i hbar / 2 as printed:
/// hbar Im(A_1 A_0^*) / ((E_1 - E_0) a).
double two_level_printed_mean_time(cplx a0, cplx a1, double spacing, const PhysicalConstants& constants);

/// Continuum limit hbar Im(A^* dA/dE) / |A|^2.
double differential_mean_time(cplx amplitude, cplx derivative, const PhysicalConstants& constants);

struct DiscreteUncertainty {
  double mean_t = 0.0;
  double var_e = 0.0;
  double var_t = 0.0;
  /// hbar^2 [1 - T |psi(T/2 + gamma)|^2 / int |psi|^2 dt]
  double rhs_bound = 0.0;
  bool satisfied = false;
  /// Robertson form of the same commutator: (hbar^2 / 4) (1 - w)^2 with the
  /// energy variance taken under the local weights |A_n|^2.
  double local_var_e = 0.0;
  double robertson_bound = 0.0;
  bool robertson_satisfied = false;
};

/// Time statistics over the cycle (-T/2 + gamma, T/2 + gamma] at x, the jump
/// of the saw-tooth placed at T/2 + gamma.
DiscreteUncertainty generalized_uncertainty(const BoundSystem& system, double gamma, double x);
DiscreteUncertainty generalized_uncertainty(const BoundSystem& system, double gamma);

}  // namespace qtime
