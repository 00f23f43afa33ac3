#include "qtime/photon.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace qtime {

PhotonSpectrum::PhotonSpectrum(Grid1D k_grid, std::vector<cplx> chi, PhotonLimits limits)
    : grid_(k_grid), chi_(std::move(chi)) {
  if (chi_.size() != grid_.count()) throw PreconditionError("spectral values do not match grid");
  if (!(grid_.start() > 0.0)) throw PreconditionError("photon spectrum needs k > 0");
  if (limits.edge_decay > 0.0 && !edges_decayed(chi_, limits.edge_decay)) {
    throw NumericalGuardError("spectrum not confined");
  }
}

PhotonSpectrum gaussian_photon_spectrum(double k0, double width, const Grid1D& k_grid, PhotonLimits limits) {
  if (!(width > 0.0)) throw PreconditionError("spectral width must be positive");
  std::vector<cplx> chi(k_grid.count());
  std::vector<double> density(k_grid.count());
  for (std::size_t i = 0; i < chi.size(); ++i) {
    const double d = k_grid.point(i) - k0;
    chi[i] = std::exp(-d * d / (4.0 * width * width));
    density[i] = std::norm(chi[i]);
  }
  const double scale = 1.0 / std::sqrt(integrate(k_grid, density));
  for (auto& v : chi) v *= scale;
  return PhotonSpectrum(k_grid, std::move(chi), limits);
}

PhotonSpectrum with_time_shift(const PhotonSpectrum& spectrum, double t0, const PhysicalConstants& constants) {
  std::vector<cplx> chi(spectrum.chi().begin(), spectrum.chi().end());
  for (std::size_t i = 0; i < chi.size(); ++i) chi[i] *= std::polar(1.0, constants.c * spectrum.grid().point(i) * t0);
  return PhotonSpectrum(spectrum.grid(), std::move(chi), {0.0});
}

namespace {

constexpr cplx kI{0.0, 1.0};

struct Modes {
  std::vector<cplx> a;  // quadrature weight * chi / k * phase
  std::vector<double> k;
};

Modes modes(const PhotonSpectrum& spectrum, double x) {
  const auto w = quadrature_weights(spectrum.grid());
  Modes out{std::vector<cplx>(w.size()), std::vector<double>(w.size())};
  for (std::size_t i = 0; i < w.size(); ++i) {
    const double k = spectrum.grid().point(i);
    out.k[i] = k;
    out.a[i] = w[i] * spectrum.chi()[i] / k * std::polar(1.0, k * x);
  }
  return out;
}

}  // namespace

EMSlice synthesize_em(const PhotonSpectrum& spectrum, double x, const Grid1D& time_grid,
                      const PhysicalConstants& constants, EMOptions options) {
  constants.validate();
  const auto m = modes(spectrum, x);
  const std::size_t n = m.k.size();
  std::vector<double> omega(n);
  std::vector<cplx> ce(n), ch(n);
  for (std::size_t i = 0; i < n; ++i) {
    omega[i] = constants.c * m.k[i];
    ce[i] = -(1.0 / constants.c) * (-kI * omega[i]) * m.a[i];
    ch[i] = kI * m.k[i] * m.a[i];
  }
  EMSlice out{x, time_grid, synthesize_on_grid(m.a, omega, time_grid), synthesize_on_grid(ce, omega, time_grid),
              synthesize_on_grid(ch, omega, time_grid)};
  if (options.window_tolerance > 0.0 && !edges_decayed(out.e, options.window_tolerance)) {
    throw NumericalGuardError("time window too small");
  }
  return out;
}

EMProfile em_profile(const PhotonSpectrum& spectrum, double t, const Grid1D& x_grid, const PhysicalConstants& constants) {
  constants.validate();
  auto m = modes(spectrum, 0.0);
  const std::size_t n = m.k.size();
  std::vector<double> freq(n);
  std::vector<cplx> ce(n), ch(n);
  for (std::size_t i = 0; i < n; ++i) {
    m.a[i] *= std::polar(1.0, -constants.c * m.k[i] * t);
    freq[i] = -m.k[i];
    ce[i] = kI * m.k[i] * m.a[i];
    ch[i] = kI * m.k[i] * m.a[i];
  }
  return {t, x_grid, synthesize_on_grid(m.a, freq, x_grid), synthesize_on_grid(ce, freq, x_grid),
          synthesize_on_grid(ch, freq, x_grid)};
}

EMDensities em_densities(std::span<const cplx> e, std::span<const cplx> h, const PhysicalConstants& constants) {
  EMDensities out{std::vector<double>(e.size()), std::vector<double>(e.size())};
  const double pi = std::numbers::pi;
  for (std::size_t i = 0; i < e.size(); ++i) {
    out.s0[i] = (std::norm(e[i]) + std::norm(h[i])) / (16.0 * pi);
    out.sx[i] = constants.c * std::real(std::conj(e[i]) * h[i]) / (8.0 * pi);
  }
  return out;
}

EMDensities em_densities(const EMSlice& slice, const PhysicalConstants& constants) {
  return em_densities(slice.e, slice.h, constants);
}

double em_continuity_residual(const PhotonSpectrum& spectrum, double x, double dx, const Grid1D& time_grid,
                              const PhysicalConstants& constants, EMOptions options) {
  if (!(dx > 0.0)) throw PreconditionError("dx must be positive");
  const auto centre = em_densities(synthesize_em(spectrum, x, time_grid, constants, options), constants);
  const auto left = em_densities(synthesize_em(spectrum, x - dx, time_grid, constants, options), constants);
  const auto right = em_densities(synthesize_em(spectrum, x + dx, time_grid, constants, options), constants);
  const auto ds0_dt = derivative(time_grid, centre.s0);
  double worst = 0.0;
  for (std::size_t i = 0; i < ds0_dt.size(); ++i) {
    worst = std::max(worst, std::abs(ds0_dt[i] + (right.sx[i] - left.sx[i]) / (2.0 * dx)));
  }
  const double window = time_grid.last() - time_grid.start();
  const double scale = std::max(peak_magnitude(ds0_dt), peak_magnitude(centre.s0) / window);
  return scale > 0.0 ? worst / scale : worst;
}

double photon_mean_time(const PhotonSpectrum& spectrum, double x, const Grid1D& time_grid,
                        const PhysicalConstants& constants, int order) {
  const auto d = em_densities(synthesize_em(spectrum, x, time_grid, constants), constants);
  const double total = integrate(time_grid, d.sx);
  if (total == 0.0) throw PreconditionError("zero flux: time measure undefined");
  std::vector<double> weighted(d.sx.size());
  for (std::size_t i = 0; i < weighted.size(); ++i) weighted[i] = std::pow(time_grid.point(i), order) * d.sx[i];
  return integrate(time_grid, weighted) / total;
}

double photon_mean_time_energy_rep(const PhotonSpectrum& spectrum, double x, const PhysicalConstants& constants,
                                   int order) {
  constants.validate();
  if (order < 1) throw PreconditionError("moment order must be >= 1");
  // Uniform k grid maps to a uniform energy grid E = hbar c k.
  const auto& kg = spectrum.grid();
  const double hc = constants.hbar * constants.c;
  const Grid1D egrid(hc * kg.start(), hc * kg.step(), kg.count());
  const double tau = x / constants.c;
  std::vector<cplx> g(spectrum.chi().begin(), spectrum.chi().end());
  auto h = g;
  for (int n = 0; n < order; ++n) {
    const auto dh = derivative(egrid, h);
    for (std::size_t i = 0; i < h.size(); ++i) h[i] = -kI * constants.hbar * dh[i] + tau * h[i];
  }
  std::vector<cplx> numer(g.size());
  std::vector<double> denom(g.size()), magnitude(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    numer[i] = std::conj(g[i]) * h[i];
    magnitude[i] = std::abs(numer[i]);
    denom[i] = std::norm(g[i]);
  }
  const double norm = integrate(egrid, denom);
  if (!(norm > 0.0)) throw PreconditionError("zero flux: time measure undefined");
  const cplx ratio = integrate(egrid, numer) / norm;
  if (std::abs(ratio.imag()) > 1e-6 * integrate(egrid, magnitude) / norm) {
    throw PreconditionError("hermiticity violation: check grids");
  }
  return ratio.real();
}

Grid1D suggest_photon_time_grid(const PhotonSpectrum& spectrum, double x, const PhysicalConstants& constants,
                                double half_widths, double per_width) {
  const double mean = photon_mean_time_energy_rep(spectrum, x, constants, 1);
  const double var = photon_mean_time_energy_rep(spectrum, x, constants, 2) - mean * mean;
  if (!(var > 0.0)) throw PreconditionError("indefinite measure: use W± split");
  const double dt = std::sqrt(var);
  const auto half = static_cast<std::size_t>(std::ceil(half_widths * per_width));
  return Grid1D(mean - half_widths * dt, dt / per_width, 2 * half + 1);
}

}  // namespace qtime
