#include "qtime/time_moments.hpp"

#include <cmath>

namespace qtime {

TimeMeasure flux_measure(const Grid1D& time_grid, std::span<const double> j, FluxSign sign) {
  if (j.size() != time_grid.count()) throw PreconditionError("flux length does not match time grid");
  std::vector<double> selected(j.size());
  std::vector<double> magnitude(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    switch (sign) {
      case FluxSign::both: selected[i] = j[i]; break;
      case FluxSign::plus: selected[i] = j[i] > 0.0 ? j[i] : 0.0; break;
      case FluxSign::minus: selected[i] = j[i] < 0.0 ? j[i] : 0.0; break;
    }
    magnitude[i] = std::abs(selected[i]);
  }
  const double total = integrate(time_grid, selected);
  const double scale = integrate(time_grid, magnitude);
  if (scale == 0.0 || std::abs(total) <= 1e-14 * scale) throw PreconditionError("zero flux: time measure undefined");
  for (auto& w : selected) w /= total;
  const MeasureKind kind = sign == FluxSign::both   ? MeasureKind::flux
                           : sign == FluxSign::plus ? MeasureKind::flux_plus
                                                    : MeasureKind::flux_minus;
  return {time_grid, std::move(selected), kind};
}

TimeMeasure density_measure(const Grid1D& time_grid, std::span<const double> rho) {
  if (rho.size() != time_grid.count()) throw PreconditionError("density length does not match time grid");
  const double total = integrate(time_grid, rho);
  if (!(total > 0.0)) throw PreconditionError("empty packet");
  std::vector<double> w(rho.begin(), rho.end());
  for (auto& v : w) v /= total;
  return {time_grid, std::move(w), MeasureKind::density};
}

double moment_time_rep(const TimeMeasure& measure, const std::function<double(double)>& f) {
  std::vector<double> integrand(measure.weight.size());
  for (std::size_t i = 0; i < integrand.size(); ++i) integrand[i] = measure.weight[i] * f(measure.time_grid.point(i));
  return integrate(measure.time_grid, integrand);
}

double moment_time_rep(const TimeMeasure& measure, int order) {
  return moment_time_rep(measure, [order](double t) { return std::pow(t, order); });
}

TemporalStats temporal_stats(const TimeMeasure& measure, int max_order) {
  TemporalStats stats;
  stats.mean = moment_time_rep(measure, 1);
  const double m = stats.mean;
  stats.variance = moment_time_rep(measure, [m](double t) { return (t - m) * (t - m); });
  for (int n = 3; n <= max_order; ++n) {
    stats.higher[n] = moment_time_rep(measure, [m, n](double t) { return std::pow(t - m, n); });
  }
  stats.indefinite = stats.variance < 0.0;
  return stats;
}

namespace {

void require_energy(const SpectralAmplitude& spectrum) {
  if (spectrum.representation() != Representation::energy) {
    throw PreconditionError("operation needs an energy-representation amplitude");
  }
}

// (t h)(E) for G = h exp(ikx): -i hbar h' + (x / v) h, the exp(ikx) factor
// differentiated analytically.
std::vector<cplx> apply_time_operator(const Grid1D& grid, const std::vector<cplx>& h, double x,
                                      const PhysicalConstants& constants) {
  const auto dh = derivative(grid, h);
  std::vector<cplx> out(h.size());
  for (std::size_t i = 0; i < h.size(); ++i) {
    const double classical = x / constants.velocity(grid.point(i));
    out[i] = cplx(0.0, -constants.hbar) * dh[i] + classical * h[i];
  }
  return out;
}

struct RatioParts {
  cplx ratio;
  double scale;  // integral of |integrand|, relative to the denominator
};

RatioParts energy_rep_parts(const SpectralAmplitude& spectrum, double x, int order,
                            const PhysicalConstants& constants) {
  require_energy(spectrum);
  constants.validate();
  if (order < 1) throw PreconditionError("moment order must be >= 1");
  const auto& grid = spectrum.grid();
  const std::size_t n = grid.count();
  std::vector<cplx> g(spectrum.values().begin(), spectrum.values().end());
  std::vector<double> v(n);
  std::vector<cplx> vg(n);
  for (std::size_t i = 0; i < n; ++i) {
    v[i] = constants.velocity(grid.point(i));
    vg[i] = v[i] * g[i];
  }
  auto t_vg = vg;
  auto t_g = g;
  for (int k = 0; k < order; ++k) {
    t_vg = apply_time_operator(grid, t_vg, x, constants);
    t_g = apply_time_operator(grid, t_g, x, constants);
  }
  std::vector<cplx> integrand(n);
  std::vector<double> magnitude(n);
  std::vector<double> weight(n);
  for (std::size_t i = 0; i < n; ++i) {
    integrand[i] = 0.5 * (std::conj(g[i]) * t_vg[i] + v[i] * std::conj(g[i]) * t_g[i]);
    magnitude[i] = std::abs(integrand[i]);
    weight[i] = v[i] * std::norm(g[i]);
  }
  const double denom = integrate(grid, weight);
  if (!(denom > 0.0)) throw PreconditionError("empty packet");
  return {integrate(grid, integrand) / denom, integrate(grid, magnitude) / denom};
}

}  // namespace

cplx moment_energy_rep_complex(const SpectralAmplitude& spectrum, double x, int order,
                               const PhysicalConstants& constants) {
  return energy_rep_parts(spectrum, x, order, constants).ratio;
}

double moment_energy_rep(const SpectralAmplitude& spectrum, double x, int order, const PhysicalConstants& constants) {
  const auto parts = energy_rep_parts(spectrum, x, order, constants);
  if (std::abs(parts.ratio.imag()) > 1e-6 * parts.scale) {
    throw PreconditionError("hermiticity violation: check grids");
  }
  return parts.ratio.real();
}

double bilinear_mean_time(const SpectralAmplitude& spectrum, double x, const PhysicalConstants& constants) {
  require_energy(spectrum);
  constants.validate();
  const auto& grid = spectrum.grid();
  const std::size_t n = grid.count();
  std::vector<cplx> g(spectrum.values().begin(), spectrum.values().end());
  std::vector<cplx> vg(n);
  std::vector<double> weight(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double v = constants.velocity(grid.point(i));
    vg[i] = v * g[i];
    weight[i] = v * std::norm(g[i]);
  }
  const double denom = integrate(grid, weight);
  if (!(denom > 0.0)) throw PreconditionError("empty packet");

  // Covariant derivative of the slowly varying factor: exp(-ikx) d/dE [h exp(ikx)].
  auto covariant = [&](const std::vector<cplx>& h) {
    auto dh = derivative(grid, h);
    for (std::size_t i = 0; i < n; ++i) {
      dh[i] += cplx(0.0, x / (constants.hbar * constants.velocity(grid.point(i)))) * h[i];
    }
    return dh;
  };
  // (f, t g) = (-i hbar / 2) int (f* g' - f'* g) dE.
  auto pairing = [&](const std::vector<cplx>& f, const std::vector<cplx>& h) {
    const auto df = covariant(f);
    const auto dh = covariant(h);
    std::vector<cplx> integrand(n);
    for (std::size_t i = 0; i < n; ++i) integrand[i] = std::conj(f[i]) * dh[i] - std::conj(df[i]) * h[i];
    return cplx(0.0, -constants.hbar / 2.0) * integrate(grid, integrand);
  };
  const cplx numer = 0.5 * (pairing(g, vg) + pairing(vg, g));
  return numer.real() / denom;
}

std::pair<double, double> energy_mean_variance(const SpectralAmplitude& spectrum, const PhysicalConstants& constants) {
  require_energy(spectrum);
  const auto& grid = spectrum.grid();
  std::vector<double> w(grid.count()), we(grid.count());
  for (std::size_t i = 0; i < grid.count(); ++i) {
    const double e = grid.point(i);
    w[i] = constants.velocity(e) * std::norm(spectrum.values()[i]);
    we[i] = e * w[i];
  }
  const double norm = integrate(grid, w);
  if (!(norm > 0.0)) throw PreconditionError("empty packet");
  const double mean = integrate(grid, we) / norm;
  for (std::size_t i = 0; i < grid.count(); ++i) {
    const double d = grid.point(i) - mean;
    we[i] = d * d * w[i];
  }
  return {mean, integrate(grid, we) / norm};
}

Grid1D suggest_time_grid(const SpectralAmplitude& spectrum, double x, const PhysicalConstants& constants,
                         double half_widths, double per_width) {
  const auto view = as_energy_amplitude(spectrum, constants);
  const double mean = moment_energy_rep(view, x, 1, constants);
  const double second = moment_energy_rep(view, x, 2, constants);
  const double var = second - mean * mean;
  if (!(var > 0.0)) throw PreconditionError("indefinite measure: use W± split");
  const double dt = std::sqrt(var);
  const auto half = static_cast<std::size_t>(std::ceil(half_widths * per_width));
  return Grid1D(mean - half_widths * dt, dt / per_width, 2 * half + 1);
}

UncertaintyProduct uncertainty_product(const SpectralAmplitude& spectrum, double x, const PhysicalConstants& constants,
                                       std::optional<Grid1D> time_grid) {
  const auto [mean_e, var_e] = energy_mean_variance(spectrum, constants);
  const Grid1D grid = time_grid ? *time_grid : suggest_time_grid(spectrum, x, constants);
  const auto df = density_flux(synthesize_slice(spectrum, x, grid, constants), constants);
  const auto stats = temporal_stats(flux_measure(grid, df.j, FluxSign::both), 2);
  if (stats.indefinite) throw PreconditionError("indefinite measure: use W± split");
  UncertaintyProduct out;
  out.delta_e = std::sqrt(var_e);
  out.delta_t = std::sqrt(stats.variance);
  out.product = out.delta_e * out.delta_t;
  out.bound_satisfied = out.product >= constants.hbar / 2.0 - 1e-9;
  return out;
}

}  // namespace qtime
