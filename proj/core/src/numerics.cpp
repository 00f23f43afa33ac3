#include "qtime/numerics.hpp"

#include <algorithm>
#include <cmath>

namespace qtime {

Grid1D::Grid1D(double start, double step, std::size_t count) : start_(start), step_(step), count_(count) {
  if (!(step > 0.0) || !std::isfinite(step) || !std::isfinite(start)) {
    throw PreconditionError("grid step must be positive and finite");
  }
  if (count < 2) throw PreconditionError("grid needs at least two points");
}

Grid1D Grid1D::span(double first, double last, std::size_t count) {
  if (count < 2) throw PreconditionError("grid needs at least two points");
  return Grid1D(first, (last - first) / static_cast<double>(count - 1), count);
}

std::vector<double> Grid1D::points() const {
  std::vector<double> out(count_);
  for (std::size_t i = 0; i < count_; ++i) out[i] = point(i);
  return out;
}

Grid1D Grid1D::refined() const { return Grid1D(start_, step_ / 2.0, 2 * count_ - 1); }

ComplexSeries::ComplexSeries(Grid1D grid, std::vector<cplx> values) : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.count()) throw PreconditionError("series length does not match grid");
}

ComplexSeries::ComplexSeries(Grid1D grid) : grid_(grid), values_(grid.count()) {}

std::vector<double> quadrature_weights(const Grid1D& grid) {
  const std::size_t n = grid.count();
  const double h = grid.step();
  std::vector<double> w(n, 0.0);
  const std::size_t intervals = n - 1;
  if (intervals == 1) {
    w[0] = w[1] = h / 2.0;
    return w;
  }
  // Simpson over the first `simpson` intervals (even), 3/8 rule on a 3-interval tail.
  const std::size_t simpson = intervals % 2 == 0 ? intervals : intervals - 3;
  if (simpson > 0) {
    w[0] += h / 3.0;
    w[simpson] += h / 3.0;
    for (std::size_t i = 1; i < simpson; ++i) w[i] += (i % 2 == 1 ? 4.0 : 2.0) * h / 3.0;
  }
  if (simpson != intervals) {
    const std::size_t s = simpson;
    w[s] += 3.0 * h / 8.0;
    w[s + 1] += 9.0 * h / 8.0;
    w[s + 2] += 9.0 * h / 8.0;
    w[s + 3] += 3.0 * h / 8.0;
  }
  return w;
}

namespace {

template <class T>
T weighted_sum(const Grid1D& grid, std::span<const T> values) {
  if (values.size() != grid.count()) throw PreconditionError("series length does not match grid");
  const auto w = quadrature_weights(grid);
  T sum{};
  for (std::size_t i = 0; i < w.size(); ++i) sum += w[i] * values[i];
  return sum;
}

template <class T>
std::vector<T> differentiate(const Grid1D& grid, std::span<const T> f) {
  const std::size_t n = grid.count();
  if (f.size() != n) throw PreconditionError("series length does not match grid");
  if (n < 3) throw PreconditionError("grid too small for derivative");
  const double h = grid.step();
  std::vector<T> d(n);
  if (n < 5) {
    for (std::size_t i = 1; i + 1 < n; ++i) d[i] = (f[i + 1] - f[i - 1]) / (2.0 * h);
    d[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * h);
    d[n - 1] = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) / (2.0 * h);
    return d;
  }
  const double s = 12.0 * h;
  for (std::size_t i = 2; i + 2 < n; ++i) d[i] = (f[i - 2] - 8.0 * f[i - 1] + 8.0 * f[i + 1] - f[i + 2]) / s;
  d[0] = (-25.0 * f[0] + 48.0 * f[1] - 36.0 * f[2] + 16.0 * f[3] - 3.0 * f[4]) / s;
  d[1] = (-3.0 * f[0] - 10.0 * f[1] + 18.0 * f[2] - 6.0 * f[3] + f[4]) / s;
  d[n - 1] = (25.0 * f[n - 1] - 48.0 * f[n - 2] + 36.0 * f[n - 3] - 16.0 * f[n - 4] + 3.0 * f[n - 5]) / s;
  d[n - 2] = (3.0 * f[n - 1] + 10.0 * f[n - 2] - 18.0 * f[n - 3] + 6.0 * f[n - 4] - f[n - 5]) / s;
  return d;
}

}  // namespace

cplx integrate(const ComplexSeries& series) { return weighted_sum(series.grid(), series.values()); }

double integrate(const Grid1D& grid, std::span<const double> values) { return weighted_sum(grid, values); }

cplx integrate(const Grid1D& grid, std::span<const cplx> values) { return weighted_sum(grid, values); }

ComplexSeries derivative(const ComplexSeries& series) {
  return ComplexSeries(series.grid(), differentiate(series.grid(), series.values()));
}

std::vector<double> derivative(const Grid1D& grid, std::span<const double> values) {
  return differentiate(grid, values);
}

std::vector<cplx> derivative(const Grid1D& grid, std::span<const cplx> values) {
  return differentiate(grid, values);
}

std::vector<cplx> synthesize_on_grid(std::span<const cplx> coeffs, std::span<const double> freqs,
                                     const Grid1D& target) {
  if (coeffs.size() != freqs.size()) throw PreconditionError("coefficient and frequency counts differ");
  constexpr std::size_t kReseed = 64;
  const std::size_t m = target.count();
  std::vector<double> re(m, 0.0), im(m, 0.0);
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    if (coeffs[j] == cplx{}) continue;
    const double w = freqs[j];
    // Plain real arithmetic: std::complex multiplication carries NaN/inf recovery.
    const double sr = std::cos(w * target.step());
    const double si = -std::sin(w * target.step());
    for (std::size_t start = 0; start < m; start += kReseed) {
      const cplx seed = coeffs[j] * std::polar(1.0, -w * target.point(start));
      double pr = seed.real(), pi = seed.imag();
      const std::size_t stop = std::min(m, start + kReseed);
      for (std::size_t i = start; i < stop; ++i) {
        re[i] += pr;
        im[i] += pi;
        const double nr = pr * sr - pi * si;
        pi = pr * si + pi * sr;
        pr = nr;
      }
    }
  }
  std::vector<cplx> out(m);
  for (std::size_t i = 0; i < m; ++i) out[i] = {re[i], im[i]};
  return out;
}

double peak_magnitude(std::span<const cplx> values) {
  double peak = 0.0;
  for (const auto& v : values) peak = std::max(peak, std::abs(v));
  return peak;
}

double peak_magnitude(std::span<const double> values) {
  double peak = 0.0;
  for (double v : values) peak = std::max(peak, std::abs(v));
  return peak;
}

bool edges_decayed(std::span<const cplx> values, double rel_tol) {
  if (values.empty()) return true;
  const double peak = peak_magnitude(values);
  if (peak == 0.0) return true;
  return std::abs(values.front()) < rel_tol * peak && std::abs(values.back()) < rel_tol * peak;
}

cplx interpolate_linear(const Grid1D& grid, std::span<const cplx> values, double at) {
  if (at < grid.start() || at > grid.last()) return {};
  const double s = (at - grid.start()) / grid.step();
  auto i = static_cast<std::size_t>(std::floor(s));
  if (i >= grid.count() - 1) i = grid.count() - 2;
  const double frac = s - static_cast<double>(i);
  return values[i] * (1.0 - frac) + values[i + 1] * frac;
}

cplx interpolate_cubic(const Grid1D& grid, std::span<const cplx> values, double at) {
  if (at < grid.start() || at > grid.last()) return {};
  if (grid.count() < 4) return interpolate_linear(grid, values, at);
  const double s = (at - grid.start()) / grid.step();
  // Stencil i-1..i+2, shifted inward at the ends.
  auto i = static_cast<std::ptrdiff_t>(std::floor(s));
  i = std::clamp<std::ptrdiff_t>(i, 1, static_cast<std::ptrdiff_t>(grid.count()) - 3);
  const double u = s - static_cast<double>(i);
  const double w0 = -u * (u - 1.0) * (u - 2.0) / 6.0;
  const double w1 = (u + 1.0) * (u - 1.0) * (u - 2.0) / 2.0;
  const double w2 = -(u + 1.0) * u * (u - 2.0) / 2.0;
  const double w3 = (u + 1.0) * u * (u - 1.0) / 6.0;
  const auto k = static_cast<std::size_t>(i);
  return w0 * values[k - 1] + w1 * values[k] + w2 * values[k + 1] + w3 * values[k + 2];
}

}  // namespace qtime
