#pragma once

#include <functional>
#include <vector>

#include "qtime/numerics.hpp"
#include "qtime/physical_constants.hpp"

namespace qtime {

/// psi(p) on a grid lying entirely on one side of p = 0 with |p| >= cutoff.
class MomentumFunction {
 public:
  MomentumFunction(Grid1D p_grid, std::vector<cplx> values, double cutoff = 0.01);

  const Grid1D& grid() const { return grid_; }
  std::span<const cplx> values() const { return values_; }
  double cutoff() const { return cutoff_; }

 private:
  Grid1D grid_;
  std::vector<cplx> values_;
  double cutoff_;
};

/// (T psi)(p) = -(mu/2) [ p^-1 (i hbar psi') + i hbar d/dp (p^-1 psi) ], with
/// numerical derivatives. Meant for functions that decay at the grid ends;
/// the end samples carry one-sided stencils.
MomentumFunction apply_T_momentum(const MomentumFunction& psi, const PhysicalConstants& constants);

/// The same operator reached through E = p^2 / 2mu: U^-1 (-i hbar d/dE) U psi
/// with U = (mu / |p|)^(1/2), the E-derivative taken by five-point central
/// differences of step dE on the callable psi. Returned on the samples of p_grid.
std::vector<cplx> apply_T_energy_route(const std::function<cplx(double)>& psi, const Grid1D& p_grid, double dE,
                                       const PhysicalConstants& constants);

/// Polynomial times exp(ikx): sum_n coeffs[n] x^n exp(ikx).
class PolyExp {
 public:
  PolyExp(std::vector<cplx> coeffs, double k);

  const std::vector<cplx>& coeffs() const { return coeffs_; }
  double k() const { return k_; }

  PolyExp times_x() const;
  PolyExp scaled(cplx factor) const;
  PolyExp plus(const PolyExp& other) const;
  /// Antiderivative with zero integration constant (the mode-wise inverse of d/dx).
  PolyExp antiderivative() const;
  /// Polynomial part at x (the value divided by exp(ikx)).
  cplx envelope(double x) const;

 private:
  std::vector<cplx> coeffs_;
  double k_;
};

/// (mu/2) [p^-1 x + x p^-1] applied symbolically to exp(ikx) with
/// p^-1 = (i/hbar) int dx. Returns (T exp(ikx)) / exp(ikx) at x.
/// Throws PreconditionError("zero velocity") for k == 0.
cplx apply_T_coordinate_planewave(double k, double x, const PhysicalConstants& constants);

/// || (H T - T H) psi - i hbar psi || / || psi || over interior samples, H = p^2 / 2mu.
double commutator_residual(const MomentumFunction& psi, const PhysicalConstants& constants);

/// int conj(a) b dp.
cplx inner_product(const MomentumFunction& a, const MomentumFunction& b);

}  // namespace qtime
