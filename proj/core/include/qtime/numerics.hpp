#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "qtime/errors.hpp"

namespace qtime {

using cplx = std::complex<double>;

/// Uniform grid: points start + i*step for i in [0, count).
class Grid1D {
 public:
  Grid1D(double start, double step, std::size_t count);

  /// Grid with `count` points spanning [first, last] inclusive.
  static Grid1D span(double first, double last, std::size_t count);

  double start() const { return start_; }
  double step() const { return step_; }
  std::size_t count() const { return count_; }
  double last() const { return start_ + step_ * static_cast<double>(count_ - 1); }
  double point(std::size_t i) const { return start_ + step_ * static_cast<double>(i); }
  std::vector<double> points() const;

  /// Same span, twice the resolution (2*count - 1 points).
  Grid1D refined() const;

  bool operator==(const Grid1D&) const = default;

 private:
  double start_;
  double step_;
  std::size_t count_;
};

/// Complex samples on a grid; values.size() == grid.count().
class ComplexSeries {
 public:
  ComplexSeries(Grid1D grid, std::vector<cplx> values);
  explicit ComplexSeries(Grid1D grid);  // zero-filled

  const Grid1D& grid() const { return grid_; }
  std::span<const cplx> values() const { return values_; }
  std::vector<cplx>& mutable_values() { return values_; }
  cplx operator[](std::size_t i) const { return values_[i]; }

 private:
  Grid1D grid_;
  std::vector<cplx> values_;
};

/// Composite quadrature weights for the grid: Simpson for an even number of
/// intervals, Simpson plus a 3/8 tail for an odd number, trapezoid for two points.
std::vector<double> quadrature_weights(const Grid1D& grid);

cplx integrate(const ComplexSeries& series);
double integrate(const Grid1D& grid, std::span<const double> values);
cplx integrate(const Grid1D& grid, std::span<const cplx> values);

/// Fourth-order differences (five-point central inside, one-sided at the
/// ends); grids of 3 or 4 points fall back to second order.
ComplexSeries derivative(const ComplexSeries& series);
std::vector<double> derivative(const Grid1D& grid, std::span<const double> values);
std::vector<cplx> derivative(const Grid1D& grid, std::span<const cplx> values);

/// Quadrature of amplitude(xi) * phase(xi) over the spectral grid. This is the
/// one kernel behind every Fourier-type wavepacket sum; `phase` closes over
/// the target point (x, t, ...).
template <class Phase>
cplx synthesis_sum(const ComplexSeries& amplitudes, Phase&& phase) {
  const auto weights = quadrature_weights(amplitudes.grid());
  cplx sum{0.0, 0.0};
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (amplitudes[i] == cplx{}) continue;
    sum += weights[i] * amplitudes[i] * phase(amplitudes.grid().point(i));
  }
  return sum;
}

/// out[m] = sum_j coeffs[j] * exp(-i * freqs[j] * grid.point(m)).
/// Same sum as synthesis_sum evaluated on a whole target grid; the phase is
/// advanced by recurrence and re-seeded periodically to bound round-off.
std::vector<cplx> synthesize_on_grid(std::span<const cplx> coeffs, std::span<const double> freqs,
                                     const Grid1D& target);

/// Largest |v| in the sequence.
double peak_magnitude(std::span<const cplx> values);
double peak_magnitude(std::span<const double> values);

/// True when both end samples are below rel_tol * peak (or the series is zero).
bool edges_decayed(std::span<const cplx> values, double rel_tol);

/// Linear interpolation on a uniform grid; returns 0 outside [start, last].
cplx interpolate_linear(const Grid1D& grid, std::span<const cplx> values, double at);

/// Four-point Lagrange interpolation; returns 0 outside [start, last].
cplx interpolate_cubic(const Grid1D& grid, std::span<const cplx> values, double at);

}  // namespace qtime
