#include "qtime/dwell_time.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "qtime/time_moments.hpp"

namespace qtime {

ScatteringSetup::ScatteringSetup(std::vector<Region> regions) : regions_(std::move(regions)) {
  if (regions_.empty()) throw PreconditionError("scattering setup needs at least one region");
  if (regions_.front().height != 0.0 || regions_.back().height != 0.0) {
    throw PreconditionError("outer regions must have zero potential");
  }
  regions_.front().left_edge = -std::numeric_limits<double>::infinity();
  for (std::size_t r = 1; r < regions_.size(); ++r) {
    if (!std::isfinite(regions_[r].left_edge) || !std::isfinite(regions_[r].height)) {
      throw PreconditionError("region edges and heights must be finite");
    }
    if (r > 1 && !(regions_[r].left_edge > regions_[r - 1].left_edge)) {
      throw PreconditionError("region edges must be strictly increasing");
    }
  }
}

ScatteringSetup ScatteringSetup::free() { return ScatteringSetup({{0.0, 0.0}}); }

ScatteringSetup ScatteringSetup::rectangular_barrier(double height, double width, double left) {
  if (!(width > 0.0)) throw PreconditionError("barrier width must be positive");
  return ScatteringSetup({{0.0, 0.0}, {left, height}, {left + width, 0.0}});
}

std::vector<double> ScatteringSetup::edges() const {
  std::vector<double> out;
  for (std::size_t r = 1; r < regions_.size(); ++r) out.push_back(regions_[r].left_edge);
  return out;
}

std::size_t ScatteringSetup::region_of(double x) const {
  std::size_t r = 0;
  while (r + 1 < regions_.size() && regions_[r + 1].left_edge <= x) ++r;
  return r;
}

StationaryState::StationaryState(double energy, std::vector<Coefficients> coefficients, const ScatteringSetup& setup)
    : energy_(energy), coefficients_(std::move(coefficients)), edges_(setup.edges()) {}

namespace {

std::size_t locate(const std::vector<double>& edges, double x) {
  return static_cast<std::size_t>(std::upper_bound(edges.begin(), edges.end(), x) - edges.begin());
}

constexpr cplx kI{0.0, 1.0};

}  // namespace

cplx StationaryState::value(double x) const {
  const auto& c = coefficients_[locate(edges_, x)];
  const cplx phase = std::exp(kI * c.q * (x - c.origin));
  return c.a * phase + c.b / phase;
}

cplx StationaryState::derivative(double x) const {
  const auto& c = coefficients_[locate(edges_, x)];
  const cplx phase = std::exp(kI * c.q * (x - c.origin));
  return kI * c.q * (c.a * phase - c.b / phase);
}

StationaryState solve_stationary(const ScatteringSetup& setup, double energy, const PhysicalConstants& constants) {
  constants.validate();
  if (!(energy > 0.0)) throw PreconditionError("energy must be positive");
  const auto& regions = setup.regions();
  const std::size_t n = regions.size();
  std::vector<StationaryState::Coefficients> coeff(n);
  for (std::size_t r = 0; r < n; ++r) {
    const double excess = energy - regions[r].height;
    if (std::abs(excess) <= 1e-12 * std::max(1.0, std::abs(regions[r].height))) {
      throw PreconditionError("degenerate linear solution at band edge");
    }
    coeff[r].q = std::sqrt(cplx(2.0 * constants.mass * excess, 0.0)) / constants.hbar;
    coeff[r].origin = (r == 0 || r + 1 == n) ? 0.0 : regions[r].left_edge;
  }
  // Transmitted wave only on the right; match value and slope leftwards.
  coeff[n - 1].a = 1.0;
  coeff[n - 1].b = 0.0;
  for (std::size_t r = n - 1; r >= 1; --r) {
    const double xb = regions[r].left_edge;
    const auto& right = coeff[r];
    const cplx pr = std::exp(kI * right.q * (xb - right.origin));
    const cplx psi = right.a * pr + right.b / pr;
    const cplx dpsi = kI * right.q * (right.a * pr - right.b / pr);
    auto& left = coeff[r - 1];
    const cplx pl = std::exp(kI * left.q * (xb - left.origin));
    const cplx slope = dpsi / (kI * left.q);
    left.a = 0.5 * (psi + slope) / pl;
    left.b = 0.5 * (psi - slope) * pl;
  }
  const cplx incoming = coeff[0].a;
  for (auto& c : coeff) {
    c.a /= incoming;
    c.b /= incoming;
  }
  return StationaryState(energy, std::move(coeff), setup);
}

StationaryState solve_stationary_perturbed(const ScatteringSetup& setup, double energy,
                                           const PhysicalConstants& constants) {
  try {
    return solve_stationary(setup, energy, constants);
  } catch (const PreconditionError&) {
    for (const auto& r : setup.regions()) {
      if (std::abs(energy - r.height) <= 1e-12 * std::max(1.0, std::abs(r.height))) {
        return solve_stationary(setup, energy + 1e-9, constants);
      }
    }
    throw;
  }
}

ScatteredPacket::ScatteredPacket(const SpectralAmplitude& spectrum, const ScatteringSetup& setup,
                                 const PhysicalConstants& constants)
    : constants_(constants) {
  constants.validate();
  const auto w = quadrature_weights(spectrum.grid());
  const double peak = peak_magnitude(spectrum.values());
  const std::size_t n = w.size();
  for (std::size_t i = 0; i < n; ++i) {
    const cplx g = spectrum.values()[i];
    const double k = spectrum.wavenumber_at(i, constants);
    if (k <= 0.0) {
      if (std::abs(g) > 1e-8 * peak) throw PreconditionError("packet not one-directional");
      continue;
    }
    const double e = spectrum.energy_at(i, constants);
    weights_.push_back(w[i] * g);
    freqs_.push_back(e / constants.hbar);
    wavenumbers_.push_back(k);
    states_.push_back(solve_stationary_perturbed(setup, e, constants));
    if (g != cplx{}) k_max_ = std::max(k_max_, k);
  }
  if (weights_.empty() || k_max_ == 0.0) throw PreconditionError("empty packet");

  const auto view = as_energy_amplitude(spectrum, constants);
  t_ref_ = moment_energy_rep(view, 0.0, 1, constants);
  const double var_t = moment_energy_rep(view, 0.0, 2, constants) - t_ref_ * t_ref_;
  if (!(var_t > 0.0)) throw PreconditionError("indefinite measure: use W± split");
  dt_ref_ = std::sqrt(var_t);
  const auto [mean_e, var_e] = energy_mean_variance(view, constants);
  v_mean_ = constants.velocity(mean_e);
  dv_ = std::sqrt(var_e) / (constants.mass * v_mean_);
}

namespace {

void guard(std::span<const cplx> psi, double tolerance) {
  if (tolerance > 0.0 && !edges_decayed(psi, tolerance)) throw NumericalGuardError("time window too small");
}

}  // namespace

FieldSlice ScatteredPacket::slice(double x, const Grid1D& time_grid, SliceOptions options) const {
  std::vector<cplx> c(weights_.size()), dc(weights_.size());
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    c[i] = weights_[i] * states_[i].value(x);
    dc[i] = weights_[i] * states_[i].derivative(x);
  }
  FieldSlice out{x, time_grid, synthesize_on_grid(c, freqs_, time_grid), synthesize_on_grid(dc, freqs_, time_grid)};
  guard(out.psi, options.window_tolerance);
  return out;
}

FieldSlice ScatteredPacket::incident_slice(double x, const Grid1D& time_grid, SliceOptions options) const {
  std::vector<cplx> c(weights_.size()), dc(weights_.size());
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    c[i] = weights_[i] * std::polar(1.0, wavenumbers_[i] * x);
    dc[i] = kI * wavenumbers_[i] * c[i];
  }
  FieldSlice out{x, time_grid, synthesize_on_grid(c, freqs_, time_grid), synthesize_on_grid(dc, freqs_, time_grid)};
  guard(out.psi, options.window_tolerance);
  return out;
}

std::vector<cplx> ScatteredPacket::profile(double t, const Grid1D& x_grid) const {
  std::vector<cplx> c(weights_.size());
  for (std::size_t i = 0; i < weights_.size(); ++i) c[i] = weights_[i] * std::polar(1.0, -freqs_[i] * t);
  std::vector<cplx> out(x_grid.count());
  for (std::size_t m = 0; m < out.size(); ++m) {
    const double x = x_grid.point(m);
    cplx sum{};
    for (std::size_t i = 0; i < c.size(); ++i) sum += c[i] * states_[i].value(x);
    out[m] = sum;
  }
  return out;
}

Grid1D scattering_time_grid(const ScatteredPacket& packet, std::span<const double> positions, double tolerance) {
  double lo_x = 0.0, hi_x = 0.0;
  for (double p : positions) {
    lo_x = std::min(lo_x, p);
    hi_x = std::max(hi_x, p);
  }
  const double reach = std::max(std::abs(lo_x), std::abs(hi_x));
  const double v_slow = std::max(packet.mean_velocity() - 4.0 * packet.velocity_spread(), 0.25 * packet.mean_velocity());
  const double dt = packet.reference_width();
  double t_lo = packet.reference_time() - reach / v_slow - 12.0 * dt;
  double t_hi = packet.reference_time() + 2.0 * (hi_x - lo_x + reach) / v_slow + 12.0 * dt;
  const double step = dt / 30.0;
  for (int attempt = 0; attempt < 8; ++attempt) {
    auto count = static_cast<std::size_t>(std::ceil((t_hi - t_lo) / step));
    count += count % 2 == 0 ? 1 : 2;
    const Grid1D grid(t_lo, step, count);
    try {
      for (double p : positions) {
        packet.slice(p, grid, {tolerance});
        packet.incident_slice(p, grid, {tolerance});
      }
      return grid;
    } catch (const NumericalGuardError&) {
      const double extra = 0.5 * (t_hi - t_lo);
      t_lo -= extra;
      t_hi += extra;
    }
  }
  throw NumericalGuardError("time window too small");
}

namespace {

Grid1D interval_grid(double a, double b, double max_step, std::size_t min_intervals) {
  auto intervals = static_cast<std::size_t>(std::ceil((b - a) / max_step));
  intervals = std::max(intervals, min_intervals);
  intervals += intervals % 2;
  return Grid1D::span(a, b, intervals + 1);
}

double spatial_step(const ScatteredPacket& packet) { return std::numbers::pi / (8.0 * packet.max_wavenumber()); }

struct FluxContext {
  ScatteredPacket packet;
  Grid1D time_grid;
  double incident_flux;
};

FluxContext prepare(const SpectralAmplitude& spectrum, const ScatteringSetup& setup, double xi, double xf,
                    const PhysicalConstants& constants, const DwellOptions& options) {
  ScatteredPacket packet(spectrum, setup, constants);
  const double positions[] = {xi, xf};
  const Grid1D grid = options.time_grid ? *options.time_grid
                                        : scattering_time_grid(packet, positions, options.window_tolerance);
  const auto in = density_flux(packet.incident_slice(xi, grid, {options.window_tolerance}), constants);
  const double flux = integrate(grid, in.j);
  if (!(flux > 0.0)) throw PreconditionError("zero incident flux");
  return {std::move(packet), grid, flux};
}

}  // namespace

double dwell_probability(const SpectralAmplitude& spectrum, const ScatteringSetup& setup, double x1, double x2,
                         double t, const PhysicalConstants& constants, const DwellOptions& options) {
  if (!(x1 < x2)) throw PreconditionError("dwell interval needs x1 < x2");
  const ScatteredPacket packet(spectrum, setup, constants);
  const double step = spatial_step(packet);

  auto density = [](const std::vector<cplx>& psi) {
    std::vector<double> rho(psi.size());
    for (std::size_t i = 0; i < psi.size(); ++i) rho[i] = std::norm(psi[i]);
    return rho;
  };
  auto captured = [&](const std::vector<double>& rho) {
    const double peak = peak_magnitude(rho);
    return peak == 0.0 || (rho.front() <= options.window_tolerance * peak && rho.back() <= options.window_tolerance * peak);
  };

  std::optional<Grid1D> window = options.x_window;
  std::vector<double> rho;
  if (window) {
    rho = density(packet.profile(t, *window));
    if (!captured(rho)) throw PreconditionError("normalization window too small");
  } else {
    double extent = 0.0;
    for (double e : setup.edges()) extent = std::max(extent, std::abs(e));
    const double elapsed = std::abs(t - packet.reference_time());
    const double width = packet.mean_velocity() * packet.reference_width() + packet.velocity_spread() * elapsed;
    double half = extent + (packet.mean_velocity() + 4.0 * packet.velocity_spread()) * elapsed + 12.0 * width;
    for (int attempt = 0;; ++attempt) {
      window = interval_grid(-half, half, step, 64);
      rho = density(packet.profile(t, *window));
      if (captured(rho)) break;
      if (attempt == 6) throw PreconditionError("normalization window too small");
      half *= 1.5;
    }
  }
  const double total = integrate(*window, rho);
  if (!(total > 0.0)) throw PreconditionError("empty packet");

  const double a = std::max(x1, window->start());
  const double b = std::min(x2, window->last());
  if (!(a < b)) return 0.0;
  const Grid1D inner = interval_grid(a, b, step, 2);
  const double part = integrate(inner, density(packet.profile(t, inner)));
  return std::clamp(part / total, 0.0, 1.0);
}

double mean_dwell_density(const SpectralAmplitude& spectrum, const ScatteringSetup& setup, double xi, double xf,
                          const PhysicalConstants& constants, const DwellOptions& options) {
  if (xf < xi) throw PreconditionError("dwell interval needs xi <= xf");
  const auto ctx = prepare(spectrum, setup, xi, xf, constants, options);
  if (xf == xi) return 0.0;
  const Grid1D xgrid = interval_grid(xi, xf, spatial_step(ctx.packet), 64);
  std::vector<double> occupancy(xgrid.count());
  for (std::size_t m = 0; m < xgrid.count(); ++m) {
    const auto df = density_flux(ctx.packet.slice(xgrid.point(m), ctx.time_grid, {options.window_tolerance}), constants);
    occupancy[m] = integrate(ctx.time_grid, df.rho);
  }
  return integrate(xgrid, occupancy) / ctx.incident_flux;
}

double mean_dwell_flux(const SpectralAmplitude& spectrum, const ScatteringSetup& setup, double xi, double xf,
                       const PhysicalConstants& constants, const DwellOptions& options) {
  if (xf < xi) throw PreconditionError("dwell interval needs xi <= xf");
  const auto ctx = prepare(spectrum, setup, xi, xf, constants, options);
  if (xf == xi) return 0.0;
  auto first_moment = [&](double x) {
    const auto df = density_flux(ctx.packet.slice(x, ctx.time_grid, {options.window_tolerance}), constants);
    std::vector<double> tj(df.j.size());
    for (std::size_t i = 0; i < tj.size(); ++i) tj[i] = ctx.time_grid.point(i) * df.j[i];
    return integrate(ctx.time_grid, tj);
  };
  return (first_moment(xf) - first_moment(xi)) / ctx.incident_flux;
}

}  // namespace qtime
