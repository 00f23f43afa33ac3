#include "qtime/discrete_spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace qtime {

namespace {

constexpr cplx kI{0.0, 1.0};
constexpr double kPi = std::numbers::pi;

double tolerant_gcd(double a, double b, double tol) {
  if (a < b) std::swap(a, b);
  while (b > tol) {
    double r = std::fmod(a, b);
    if (r > b - tol) r = 0.0;
    a = b;
    b = r;
  }
  return a;
}

std::size_t cycle_samples(const BoundSystem& system) {
  const auto top = static_cast<std::size_t>(system.multiples().back());
  std::size_t count = std::max<std::size_t>(2001, 64 * top + 1);
  return count % 2 == 1 ? count : count + 1;
}

}  // namespace

double commensurate_divisor(std::span<const double> levels, double rel_tol) {
  if (levels.size() < 2) throw PreconditionError("no evolution with one bound state");
  std::vector<double> spacings;
  for (std::size_t n = 1; n < levels.size(); ++n) {
    if (!(levels[n] > levels[n - 1])) throw PreconditionError("levels must be strictly ascending");
    spacings.push_back(levels[n] - levels[0]);
  }
  const double scale = spacings.back();
  const double tol = rel_tol * scale;
  double d = spacings.front();
  for (double s : spacings) d = tolerant_gcd(d, s, tol);
  if (!(d > 0.0) || scale / d > 1e6) throw PreconditionError("incommensurate spectrum");
  for (double s : spacings) {
    const double m = std::round(s / d);
    if (std::abs(s - m * d) > rel_tol * s) throw PreconditionError("incommensurate spectrum");
  }
  return d;
}

BoundSystem::BoundSystem(std::vector<double> levels, Eigenfunction eigenfunction, Grid1D x_grid,
                         std::vector<cplx> coefficients, double probe, const PhysicalConstants& constants)
    : levels_(std::move(levels)),
      eigenfunction_(std::move(eigenfunction)),
      x_grid_(x_grid),
      coefficients_(std::move(coefficients)),
      probe_(probe),
      constants_(constants) {
  constants_.validate();
  if (levels_.size() < 2) throw PreconditionError("no evolution with one bound state");
  if (coefficients_.size() != levels_.size()) throw PreconditionError("one coefficient per level required");
  double norm = 0.0;
  for (const auto& g : coefficients_) norm += std::norm(g);
  if (std::abs(norm - 1.0) > 1e-12) throw PreconditionError("coefficients must satisfy sum |g_n|^2 = 1");
  divisor_ = commensurate_divisor(levels_);
  period_ = 2.0 * kPi * constants_.hbar / divisor_;
  for (double e : levels_) multiples_.push_back(std::llround((e - levels_.front()) / divisor_));
}

std::vector<cplx> BoundSystem::amplitudes(double x) const {
  std::vector<cplx> a(levels_.size());
  for (std::size_t n = 0; n < a.size(); ++n) a[n] = coefficients_[n] * eigenfunction_(n, x);
  return a;
}

double BoundSystem::orthonormality_error() const {
  const std::size_t n = levels_.size();
  std::vector<std::vector<double>> samples(n, std::vector<double>(x_grid_.count()));
  for (std::size_t m = 0; m < n; ++m) {
    for (std::size_t i = 0; i < x_grid_.count(); ++i) samples[m][i] = eigenfunction_(m, x_grid_.point(i));
  }
  double worst = 0.0;
  std::vector<double> product(x_grid_.count());
  for (std::size_t m = 0; m < n; ++m) {
    for (std::size_t k = m; k < n; ++k) {
      for (std::size_t i = 0; i < product.size(); ++i) product[i] = samples[m][i] * samples[k][i];
      const double overlap = integrate(x_grid_, product);
      worst = std::max(worst, std::abs(overlap - (m == k ? 1.0 : 0.0)));
    }
  }
  return worst;
}

BoundSystem BoundSystem::with_coefficients(std::vector<cplx> coefficients) const {
  return BoundSystem(levels_, eigenfunction_, x_grid_, std::move(coefficients), probe_, constants_);
}

BoundSystem build_catalog_system(CatalogKind kind, std::size_t levels, std::vector<cplx> coefficients,
                                 const PhysicalConstants& constants, CatalogParams params) {
  constants.validate();
  if (levels < 2) throw PreconditionError("no evolution with one bound state");
  if (coefficients.size() != levels) throw PreconditionError("one coefficient per level required");
  double norm = 0.0;
  for (const auto& g : coefficients) norm += std::norm(g);
  if (!(norm > 0.0)) throw PreconditionError("coefficients must not all vanish");
  for (auto& g : coefficients) g /= std::sqrt(norm);

  const double hbar = constants.hbar;
  const double mu = constants.mass;
  std::vector<double> energies(levels);
  if (kind == CatalogKind::harmonic_oscillator) {
    const double omega = params.omega;
    if (!(omega > 0.0)) throw PreconditionError("oscillator frequency must be positive");
    for (std::size_t n = 0; n < levels; ++n) energies[n] = hbar * omega * (static_cast<double>(n) + 0.5);
    const double alpha = std::sqrt(mu * omega / hbar);
    // Normalized Hermite functions by the stable three-term recurrence.
    auto phi = [alpha](std::size_t n, double x) {
      const double xi = alpha * x;
      double prev = 0.0;
      double cur = std::sqrt(alpha) * std::pow(kPi, -0.25) * std::exp(-0.5 * xi * xi);
      for (std::size_t m = 0; m < n; ++m) {
        const double next = std::sqrt(2.0 / (m + 1.0)) * xi * cur - std::sqrt(m / (m + 1.0)) * prev;
        prev = cur;
        cur = next;
      }
      return cur;
    };
    double mean_e = 0.0;
    for (std::size_t n = 0; n < levels; ++n) mean_e += std::norm(coefficients[n]) * energies[n];
    const double amplitude = std::sqrt(2.0 * mean_e / (mu * omega * omega));
    const double extent = (std::sqrt(2.0 * static_cast<double>(levels) + 1.0) + 8.0) / alpha;
    return BoundSystem(std::move(energies), phi, Grid1D::span(-extent, extent, 4001), std::move(coefficients),
                       0.5 * amplitude, constants);
  }
  const double width = params.box_width;
  if (!(width > 0.0)) throw PreconditionError("box width must be positive");
  const double unit = kPi * kPi * hbar * hbar / (2.0 * mu * width * width);
  for (std::size_t n = 0; n < levels; ++n) energies[n] = unit * static_cast<double>((n + 1) * (n + 1));
  auto phi = [width](std::size_t n, double x) {
    if (x < 0.0 || x > width) return 0.0;
    return std::sqrt(2.0 / width) * std::sin(static_cast<double>(n + 1) * kPi * x / width);
  };
  return BoundSystem(std::move(energies), phi, Grid1D::span(0.0, width, 4001), std::move(coefficients), width / 3.0,
                     constants);
}

double sawtooth(double t, double period) {
  if (!(period > 0.0)) throw PreconditionError("period must be positive");
  return t - period * std::ceil((t - period / 2.0) / period);
}

cplx evolve(const BoundSystem& system, double x, double t) {
  const double reduced = sawtooth(t, system.period());
  const auto& levels = system.levels();
  const auto a = system.amplitudes(x);
  cplx sum{};
  for (std::size_t n = 0; n < a.size(); ++n) {
    sum += a[n] * std::polar(1.0, -(levels[n] - levels.front()) * reduced / system.constants().hbar);
  }
  return sum;
}

namespace {

double local_weight(const BoundSystem& system, double x) {
  double a = 0.0;
  for (const auto& v : system.amplitudes(x)) a += std::norm(v);
  // sum |g_n|^2 = 1 and int phi_n^2 dx = 1, so 1 / span is a typical density.
  const double typical = 1.0 / (system.x_grid().last() - system.x_grid().start());
  if (!(a > 1e-14 * typical)) throw PreconditionError("node point");
  return a;
}

// |psi(x, t)|^2 on one cycle [start, start + T].
std::pair<Grid1D, std::vector<double>> cycle_density(const BoundSystem& system, double x, double start) {
  const Grid1D grid = Grid1D::span(start, start + system.period(), cycle_samples(system));
  std::vector<double> rho(grid.count());
  for (std::size_t i = 0; i < rho.size(); ++i) rho[i] = std::norm(evolve(system, x, grid.point(i)));
  return {grid, rho};
}

}  // namespace

double mean_time_discrete(const BoundSystem& system, double x, int order) {
  local_weight(system, x);
  const double half = system.period() / 2.0;
  const auto [grid, rho] = cycle_density(system, x, -half);
  // On the closed cycle [-T/2, T/2] the saw-tooth is t itself (the left end is its limit).
  std::vector<double> weighted(rho.size());
  for (std::size_t i = 0; i < rho.size(); ++i) weighted[i] = std::pow(grid.point(i), order) * rho[i];
  return integrate(grid, weighted) / integrate(grid, rho);
}

double time_operator_amplitudes(std::span<const double> levels, std::span<const cplx> amplitudes, double divisor,
                                const PhysicalConstants& constants) {
  if (levels.size() < 2 || amplitudes.size() != levels.size()) {
    throw PreconditionError("no evolution with one bound state");
  }
  double a = 0.0;
  for (const auto& v : amplitudes) a += std::norm(v);
  if (!(a > 0.0)) throw PreconditionError("node point");
  cplx sum{};
  for (std::size_t n = 1; n < levels.size(); ++n) {
    for (std::size_t m = 0; m < n; ++m) {
      const long long steps = std::llround((levels[n] - levels[m]) / divisor);
      const double sign = steps % 2 == 0 ? 1.0 : -1.0;
      const cplx bilinear = std::conj(amplitudes[m]) * amplitudes[n] - std::conj(amplitudes[n]) * amplitudes[m];
      sum += sign * bilinear / (levels[n] - levels[m]);
    }
  }
  const cplx value = kI * constants.hbar * sum / a;
  if (std::abs(value.imag()) > 1e-9 * std::max(1.0, std::abs(value.real()))) {
    throw NumericalGuardError("time operator expectation not real");
  }
  return sawtooth(value.real(), 2.0 * kPi * constants.hbar / divisor);
}

double time_operator_energy_rep(const BoundSystem& system, double x) {
  local_weight(system, x);
  const auto a = system.amplitudes(x);
  return time_operator_amplitudes(system.levels(), a, system.divisor(), system.constants());
}

double two_level_printed_mean_time(cplx a0, cplx a1, double spacing, const PhysicalConstants& constants) {
  const double a = std::norm(a0) + std::norm(a1);
  if (!(a > 0.0)) throw PreconditionError("node point");
  // A_1^* (A_1 - A_0) - A_1 (A_1 - A_0)^*
  const cplx bilinear = std::conj(a1) * (a1 - a0) - a1 * std::conj(a1 - a0);
  return (cplx(0.0, -constants.hbar / 2.0) * bilinear / spacing).real() / a;
}

double differential_mean_time(cplx amplitude, cplx derivative, const PhysicalConstants& constants) {
  const double a = std::norm(amplitude);
  if (!(a > 0.0)) throw PreconditionError("node point");
  return constants.hbar * std::imag(std::conj(amplitude) * derivative) / a;
}

DiscreteUncertainty generalized_uncertainty(const BoundSystem& system, double gamma, double x) {
  const double period = system.period();
  if (!(gamma > -period / 2.0 && gamma <= period / 2.0)) throw PreconditionError("gamma must lie in (-T/2, T/2]");
  const double a = local_weight(system, x);
  const auto [grid, rho] = cycle_density(system, x, -period / 2.0 + gamma);

  DiscreteUncertainty out;
  // The analytic cycle integral of |psi|^2 is T sum |A_n|^2.
  const double total = period * a;
  std::vector<double> weighted(rho.size());
  for (std::size_t i = 0; i < rho.size(); ++i) weighted[i] = grid.point(i) * rho[i];
  out.mean_t = integrate(grid, weighted) / total;
  for (std::size_t i = 0; i < rho.size(); ++i) {
    const double d = grid.point(i) - out.mean_t;
    weighted[i] = d * d * rho[i];
  }
  out.var_t = integrate(grid, weighted) / total;

  const auto& levels = system.levels();
  const auto amps = system.amplitudes(x);
  double mean_e = 0.0, local_mean = 0.0;
  for (std::size_t n = 0; n < levels.size(); ++n) {
    mean_e += std::norm(system.coefficients()[n]) * levels[n];
    local_mean += std::norm(amps[n]) * levels[n] / a;
  }
  for (std::size_t n = 0; n < levels.size(); ++n) {
    out.var_e += std::norm(system.coefficients()[n]) * (levels[n] - mean_e) * (levels[n] - mean_e);
    out.local_var_e += std::norm(amps[n]) * (levels[n] - local_mean) * (levels[n] - local_mean) / a;
  }

  const double edge = std::norm(evolve(system, x, period / 2.0 + gamma));
  const double w = period * edge / total;
  const double h2 = system.constants().hbar * system.constants().hbar;
  out.rhs_bound = h2 * (1.0 - w);
  out.satisfied = out.var_e * out.var_t >= out.rhs_bound - 1e-9;
  out.robertson_bound = 0.25 * h2 * (1.0 - w) * (1.0 - w);
  out.robertson_satisfied = out.local_var_e * out.var_t >= out.robertson_bound - 1e-9;
  return out;
}

DiscreteUncertainty generalized_uncertainty(const BoundSystem& system, double gamma) {
  return generalized_uncertainty(system, gamma, system.probe());
}

}  // namespace qtime
