#include <doctest.h>

#include <cmath>
#include <numbers>

#include "generators.hpp"
#include "oracles.hpp"
#include "qtime/discrete_spectrum.hpp"

using namespace qtime;

namespace {

const PhysicalConstants kUnits{};
constexpr double kPi = std::numbers::pi;

BoundSystem oscillator(std::vector<cplx> g) {
  const auto n = g.size();
  return build_catalog_system(CatalogKind::harmonic_oscillator, n, std::move(g), kUnits);
}

// Direct cycle average with the system's own evolution, trapezoid in t.
double brute_mean_time(const BoundSystem& s, double x, int order) {
  const double half = s.period() / 2.0;
  const auto rho = [&](double t) { return std::norm(evolve(s, x, t)); };
  const double num = oracle::trapezoid_real([&](double t) { return std::pow(t, order) * rho(t); }, -half, half, 20000);
  return num / oracle::trapezoid_real(rho, -half, half, 20000);
}

}  // namespace

TEST_CASE("catalog systems") {
  const auto osc = oscillator({1.0, 1.0, 1.0});
  CHECK(osc.divisor() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(osc.period() == doctest::Approx(2.0 * kPi).epsilon(1e-12));
  CHECK(osc.orthonormality_error() < 1e-8);
  double total = 0.0;
  for (const auto& g : osc.coefficients()) total += std::norm(g);
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));

  const auto box = build_catalog_system(CatalogKind::rigid_box, 4, {1.0, 0.5, 0.2, cplx(0.0, 0.3)}, kUnits);
  CHECK(box.levels()[0] == doctest::Approx(0.5));
  CHECK(box.levels()[3] == doctest::Approx(8.0));
  CHECK(box.divisor() == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(box.period() == doctest::Approx(4.0 * kPi).epsilon(1e-12));
  CHECK(box.multiples() == std::vector<long long>{0, 3, 8, 15});
  CHECK(box.orthonormality_error() < 1e-8);

  CHECK_THROWS_WITH(oscillator({1.0}), "no evolution with one bound state");
}

TEST_CASE("commensurate divisor") {
  const std::vector<double> a = {0.5, 2.0, 4.5};
  CHECK(commensurate_divisor(a) == doctest::Approx(0.5));
  const std::vector<double> b = {1.0, 1.0 + std::sqrt(2.0), 1.0 + std::sqrt(3.0)};
  CHECK_THROWS_WITH(commensurate_divisor(b), "incommensurate spectrum");
}

TEST_CASE("evolution") {
  const auto s = oscillator({1.0, cplx(0.3, 0.4), cplx(-0.2, 0.1)});
  const double x = 0.7;
  cplx at_zero{};
  for (std::size_t n = 0; n < s.size(); ++n) at_zero += s.coefficients()[n] * s.eigenfunction(n, x);
  CHECK(std::abs(evolve(s, x, 0.0) - at_zero) < 1e-14);

  gen::Source src(6);
  for (int trial = 0; trial < 50; ++trial) {
    const double t = src.uniform(-100.0, 100.0);
    CHECK(std::abs(evolve(s, x, t + s.period()) - evolve(s, x, t)) < 1e-12);
  }

  const auto dominant = oscillator({0.0, 1.0, 0.0});
  const double level = std::abs(evolve(dominant, x, 0.0));
  for (double t : {0.3, 1.7, 5.0, 40.0}) CHECK(std::abs(std::abs(evolve(dominant, x, t)) - level) < 1e-12);
}

TEST_CASE("saw-tooth") {
  const double period = 2.0 * kPi;
  CHECK(sawtooth(0.0, period) == 0.0);
  CHECK(sawtooth(period / 2.0, period) == doctest::Approx(period / 2.0));
  CHECK(sawtooth(period / 2.0 + 1e-9, period) == doctest::Approx(-period / 2.0 + 1e-9));
  CHECK(sawtooth(0.75 * period, period) == doctest::Approx(-0.25 * period));
  gen::Source src(3);
  for (int trial = 0; trial < 200; ++trial) {
    const double t = src.uniform(-50.0, 50.0);
    const double s = sawtooth(t, period);
    CHECK(s > -period / 2.0);
    CHECK(s <= period / 2.0);
    CHECK(std::abs(sawtooth(t + 3.0 * period, period) - s) < 1e-9);
    const double inside = src.uniform(-0.499, 0.5) * period;
    CHECK(sawtooth(inside, period) == doctest::Approx(inside));
  }
}

TEST_CASE("mean time over the cycle") {
  const auto single = oscillator({0.0, 0.0, 1.0});
  CHECK(std::abs(mean_time_discrete(single, 0.4, 1)) < 1e-12);
  CHECK(mean_time_discrete(single, 0.4, 2) == doctest::Approx(single.period() * single.period() / 12.0).epsilon(1e-9));

  const auto s = oscillator({1.0, cplx(0.5, 0.5), cplx(0.0, -0.4)});
  for (int order : {1, 2}) {
    CHECK(std::abs(mean_time_discrete(s, 0.6, order) - brute_mean_time(s, 0.6, order)) < 1e-6);
  }

  // phi_1 and phi_3 vanish at the centre.
  CHECK_THROWS_WITH(mean_time_discrete(oscillator({0.0, 1.0, 0.0, 1.0}), 0.0, 1), "node point");
}

TEST_CASE("energy-representation operator") {
  // Relatively real amplitudes: the bilinear form vanishes.
  const auto real = oscillator({1.0, 1.0});
  CHECK(std::abs(time_operator_energy_rep(real, real.probe())) < 1e-12);

  const std::vector<double> levels = {0.5, 1.5};
  const std::vector<cplx> amps = {0.6, std::polar(0.8, 0.9)};
  const double printed = two_level_printed_mean_time(amps[0], amps[1], 1.0, kUnits);
  // The pairwise form is twice the printed two-level one.
  CHECK(time_operator_amplitudes(levels, amps, 1.0, kUnits) == doctest::Approx(2.0 * printed).epsilon(1e-12));
  CHECK(printed == doctest::Approx(0.48 * std::sin(0.9)).epsilon(1e-12));

  CHECK(differential_mean_time(cplx(2.0, 0.0), cplx(0.0, 3.0), kUnits) == doctest::Approx(1.5));
}

TEST_CASE("property: both representations agree on two-level systems") {
  gen::Source src(51);
  for (int trial = 0; trial < 40; ++trial) {
    CAPTURE(trial);
    const double alpha = src.uniform(-kPi, kPi), w = src.uniform(0.2, 1.0);
    const bool box = src.coin();
    const auto s = build_catalog_system(box ? CatalogKind::rigid_box : CatalogKind::harmonic_oscillator, 2,
                                        {1.0, std::polar(w, alpha)}, kUnits);
    const double x = box ? src.uniform(0.3, 2.8) : src.uniform(-2.0, 2.0);
    CAPTURE(x);
    if (std::abs(s.eigenfunction(0, x) * s.eigenfunction(1, x)) < 1e-3) continue;
    const double direct = mean_time_discrete(s, x, 1);
    const double operator_form = time_operator_energy_rep(s, x);
    CHECK(std::abs(direct - operator_form) < 1e-3 * s.period());
  }
}

TEST_CASE("property: operator output is real for any system") {
  gen::Source src(52);
  for (int trial = 0; trial < 40; ++trial) {
    const auto n = static_cast<std::size_t>(src.integer(2, 8));
    const auto g = gen::complex_vector(src, n);
    const auto s = build_catalog_system(src.coin() ? CatalogKind::rigid_box : CatalogKind::harmonic_oscillator, n, g,
                                        kUnits);
    const double t = time_operator_energy_rep(s, s.probe());
    CHECK(std::isfinite(t));
    CHECK(t > -s.period() / 2.0);
    CHECK(t <= s.period() / 2.0);
  }
}

TEST_CASE("continuum limit of the two-level form is first order") {
  // A(E) = Gaussian * exp(i (E tau + beta u^2)); dA/dE at E0 = i tau A(E0).
  const double e0 = 3.0, tau = 1.5, beta = 0.3;
  const auto amp = [&](double e) {
    const double u = e - e0;
    return std::exp(-u * u) * std::polar(1.0, tau * e + beta * u * u);
  };
  const double limit = differential_mean_time(amp(e0), cplx(0.0, tau) * amp(e0), kUnits);
  CHECK(limit == doctest::Approx(tau));
  std::vector<double> errors;
  for (double d : {0.04, 0.02, 0.01, 0.005}) {
    const std::vector<double> levels = {e0, e0 + d};
    const std::vector<cplx> amps = {amp(e0), amp(e0 + d)};
    errors.push_back(std::abs(time_operator_amplitudes(levels, amps, d, kUnits) - limit));
  }
  for (std::size_t i = 1; i < errors.size(); ++i) {
    CHECK(errors[i] < errors[i - 1]);
    CHECK(std::log2(errors[i - 1] / errors[i]) == doctest::Approx(1.0).epsilon(0.2));
  }
}

TEST_CASE("generalized uncertainty") {
  const auto single = oscillator({0.0, 1.0});
  const auto u1 = generalized_uncertainty(single, 0.0);
  CHECK(u1.var_e == 0.0);
  CHECK(std::abs(u1.rhs_bound) < 1e-12);
  CHECK(u1.satisfied);

  // Equal weights at the probe, where phi_0 = phi_1: |psi|^2 vanishes at T/2,
  // so the hbar^2 form asks for 1 while the commutator (Robertson) bound is
  // hbar^2 / 4. The product sits between the two.
  const auto pair = oscillator({1.0, 1.0});
  const auto u2 = generalized_uncertainty(pair, 0.0);
  CHECK(std::isfinite(u2.var_t));
  CHECK(u2.var_e == doctest::Approx(0.25));
  CHECK(u2.rhs_bound == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(u2.robertson_bound == doctest::Approx(0.25).epsilon(1e-9));
  CHECK(u2.var_e * u2.var_t == doctest::Approx(0.322467).epsilon(1e-5));
  CHECK_FALSE(u2.satisfied);
  CHECK(u2.robertson_satisfied);
  // Moving the jump to T/2 + T/4 lands on a density maximum instead.
  const auto shifted = generalized_uncertainty(pair, pair.period() / 4.0);
  CHECK(std::abs(shifted.rhs_bound) < 1e-12);
  CHECK(shifted.satisfied);

  // Broad distribution over many levels: a narrow pulse in t, rhs close to hbar^2.
  std::vector<cplx> g(40);
  for (std::size_t n = 0; n < g.size(); ++n) {
    const double d = (static_cast<double>(n) - 20.0) / 5.0;
    g[n] = std::exp(-d * d / 4.0);
  }
  const auto wide = oscillator(g);
  const auto u3 = generalized_uncertainty(wide, 0.0, 0.0);
  CHECK(u3.rhs_bound > 0.99);
  CHECK(u3.rhs_bound <= 1.0);
  CHECK(u3.var_e > 4.0 * wide.divisor() * wide.divisor());
}
