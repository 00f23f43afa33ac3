#include <doctest.h>

#include <cmath>

#include "generators.hpp"
#include "oracles.hpp"
#include "qtime/dwell_time.hpp"
#include "qtime/sampling.hpp"

using namespace qtime;

namespace {

const PhysicalConstants kUnits{};

double unitarity_error(const StationaryState& s) {
  return std::abs(std::norm(s.transmission()) + std::norm(s.reflection()) - 1.0);
}

SpectralAmplitude momentum_packet(double k0, double w) {
  return gaussian_spectrum(k0, w, Representation::momentum, default_momentum_grid(k0, w, 40.0), kUnits);
}

}  // namespace

TEST_CASE("setup validation") {
  CHECK_THROWS_AS(ScatteringSetup({{0.0, 1.0}}), PreconditionError);
  CHECK_THROWS_AS(ScatteringSetup({{0.0, 0.0}, {2.0, 3.0}, {1.0, 0.0}}), PreconditionError);
  CHECK_THROWS_AS(ScatteringSetup::rectangular_barrier(1.0, 0.0), PreconditionError);
  const auto b = ScatteringSetup::rectangular_barrier(10.0, 1.0, 2.0);
  REQUIRE(b.edges().size() == 2);
  CHECK(b.edges()[0] == 2.0);
  CHECK(b.edges()[1] == 3.0);
  CHECK(b.region_of(-5.0) == 0);
  CHECK(b.region_of(2.5) == 1);
  CHECK(b.region_of(9.0) == 2);
}

TEST_CASE("free motion transmits everything") {
  const auto s = solve_stationary(ScatteringSetup::free(), 3.7, kUnits);
  CHECK(std::abs(s.transmission() - 1.0) < 1e-14);
  CHECK(std::abs(s.reflection()) < 1e-14);
  CHECK(std::abs(s.value(2.0) - std::polar(1.0, 2.0 * std::sqrt(7.4))) < 1e-13);
}

TEST_CASE("rectangular barrier against the closed form") {
  const auto barrier = ScatteringSetup::rectangular_barrier(10.0, 1.0);
  const auto s = solve_stationary(barrier, 5.0, kUnits);
  CHECK(std::abs(std::norm(s.transmission()) - oracle::barrier_transmission(5.0, 10.0, 1.0)) < 1e-10);
  CHECK(unitarity_error(s) < 1e-10);
  CHECK(std::norm(solve_stationary(barrier, 1000.0, kUnits).transmission()) == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("band edge is degenerate unless perturbed") {
  const auto barrier = ScatteringSetup::rectangular_barrier(10.0, 1.0);
  CHECK_THROWS_WITH(solve_stationary(barrier, 10.0, kUnits), "degenerate linear solution at band edge");
  CHECK_THROWS_AS(solve_stationary(barrier, 0.0, kUnits), PreconditionError);
  const auto s = solve_stationary_perturbed(barrier, 10.0, kUnits);
  CHECK(s.energy() == doctest::Approx(10.0 + 1e-9).epsilon(1e-15));
  CHECK(unitarity_error(s) < 1e-10);
  // At V0 = E the closed form tends to 1 / (1 + mu V0 a^2 / (2 hbar^2)).
  CHECK(std::norm(s.transmission()) == doctest::Approx(1.0 / 6.0).epsilon(1e-6));
}

TEST_CASE("property: unitarity, closed form and smooth matching") {
  gen::Source src(303);
  for (int trial = 0; trial < 200; ++trial) {
    CAPTURE(trial);
    const int inner = src.integer(1, 4);
    std::vector<Region> regions{{0.0, 0.0}};
    double edge = src.uniform(-2.0, 2.0);
    for (int r = 0; r < inner; ++r) {
      regions.push_back({edge, src.uniform(-5.0, 20.0)});
      edge += src.uniform(0.1, 1.5);
    }
    regions.push_back({edge, 0.0});
    const ScatteringSetup setup(regions);
    const double e = src.uniform(0.05, 30.0);
    const auto s = solve_stationary_perturbed(setup, e, kUnits);
    CHECK(unitarity_error(s) < 1e-10);
    for (double a : setup.edges()) {
      const double tiny = 1e-7;
      const double scale = 1.0 + std::abs(s.value(a)) + std::abs(s.derivative(a));
      CHECK(std::abs(s.value(a - tiny) - s.value(a + tiny)) < 1e-5 * scale);
      CHECK(std::abs(s.derivative(a - tiny) - s.derivative(a + tiny)) < 1e-4 * scale);
    }
    if (inner == 1) {
      const double v0 = regions[1].height, a = regions[2].left_edge - regions[1].left_edge;
      if (v0 > 0.0) {
        CHECK(std::abs(std::norm(s.transmission()) - oracle::barrier_transmission(s.energy(), v0, a)) < 1e-9);
      }
    }
  }
}

TEST_CASE("dwell probability") {
  // |g(k)|^2 ~ exp(-(k - k0)^2 / (2 w^2)) gives |Psi(x, 0)|^2 ~ exp(-x^2 / (2 sx^2)), sx = 1 / (2 w).
  const auto sp = momentum_packet(5.0, 0.5);
  const auto free = ScatteringSetup::free();
  DwellOptions opts;
  opts.x_window = Grid1D::span(-30.0, 30.0, 6001);
  CHECK(std::abs(dwell_probability(sp, free, -30.0, 30.0, 0.0, kUnits, opts) - 1.0) < 1e-6);
  CHECK(dwell_probability(sp, free, 20.0, 30.0, 0.0, kUnits, opts) < 1e-6);
  CHECK(std::abs(dwell_probability(sp, free, -2.0, 2.0, 0.0, kUnits) - std::erf(std::sqrt(2.0))) < 1e-3);
  CHECK_THROWS_AS(dwell_probability(sp, free, 1.0, 1.0, 0.0, kUnits), PreconditionError);
  opts.x_window = Grid1D::span(-1.0, 1.0, 201);
  CHECK_THROWS_WITH(dwell_probability(sp, free, -0.5, 0.5, 0.0, kUnits, opts), "normalization window too small");
}

TEST_CASE("property: dwell probability stays in [0, 1]") {
  gen::Source src(8);
  const auto sp = momentum_packet(4.0, 0.4);
  const auto barrier = ScatteringSetup::rectangular_barrier(8.0, 0.8);
  for (int trial = 0; trial < 12; ++trial) {
    const double x1 = src.uniform(-15.0, 10.0), x2 = x1 + src.uniform(0.1, 20.0), t = src.uniform(-3.0, 3.0);
    CAPTURE(trial);
    const double p = dwell_probability(sp, barrier, x1, x2, t, kUnits);
    CHECK(p >= 0.0);
    CHECK(p <= 1.0 + 1e-12);
  }
}

TEST_CASE("free dwell time is the classical traversal time") {
  const auto sp = chirped_gaussian(5.0, 0.05, -10.0, 0.0, kUnits, 40.0);
  const auto free = ScatteringSetup::free();
  const double classical = 10.0 / std::sqrt(10.0);
  const double density = mean_dwell_density(sp, free, 0.0, 10.0, kUnits);
  CHECK(std::abs(density / classical - 1.0) < 0.02);
  CHECK(std::abs(mean_dwell_flux(sp, free, 0.0, 10.0, kUnits) / density - 1.0) < 1e-3);
  CHECK(mean_dwell_density(sp, free, 3.0, 3.0, kUnits) == 0.0);
  CHECK(mean_dwell_flux(sp, free, 3.0, 3.0, kUnits) == 0.0);
  CHECK_THROWS_AS(mean_dwell_density(sp, free, 3.0, 2.0, kUnits), PreconditionError);
}

TEST_CASE("thick barrier excludes the packet") {
  const double e0 = 2.0, v0 = 10.0, a = 3.0;
  const auto sp = chirped_gaussian(e0, 0.1, -10.0, 0.0, kUnits, 40.0);
  const auto barrier = ScatteringSetup::rectangular_barrier(v0, a);
  const double tau = mean_dwell_density(sp, barrier, 0.0, a, kUnits);
  CHECK(tau < 0.2 * a / std::sqrt(2.0 * e0));
  // Stationary dwell time int_0^a |phi|^2 dx / (hbar k / mu) at E0.
  const auto phi = solve_stationary(barrier, e0, kUnits);
  const double stationary =
      oracle::trapezoid_real([&](double x) { return std::norm(phi.value(x)); }, 0.0, a, 20000) / std::sqrt(2.0 * e0);
  CHECK(std::abs(tau / stationary - 1.0) < 0.05);
  CHECK(std::abs(mean_dwell_flux(sp, barrier, 0.0, a, kUnits) / tau - 1.0) < 1e-3);
}

TEST_CASE("packets must be one-directional and non-empty") {
  // Symmetric about k = 0 without sampling it.
  const Grid1D kg(-8.005, 0.01, 1602);
  std::vector<cplx> both(kg.count());
  for (std::size_t i = 0; i < kg.count(); ++i) {
    const double k = kg.point(i);
    both[i] = std::exp(-2.0 * (k - 4.0) * (k - 4.0)) + std::exp(-2.0 * (k + 4.0) * (k + 4.0));
  }
  const SpectralAmplitude two_way(Representation::momentum, kg, both, {.cutoff = 1e-3});
  CHECK_THROWS_WITH(ScatteredPacket(two_way, ScatteringSetup::free(), kUnits), "packet not one-directional");

  const SpectralAmplitude zero(Representation::energy, Grid1D::span(1.0, 2.0, 11), std::vector<cplx>(11));
  CHECK_THROWS_AS(ScatteredPacket(zero, ScatteringSetup::free(), kUnits), PreconditionError);
}
