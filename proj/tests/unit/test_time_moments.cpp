#include <doctest.h>

#include <cmath>

#include "generators.hpp"
#include "oracles.hpp"
#include "qtime/sampling.hpp"
#include "qtime/time_moments.hpp"

using namespace qtime;

namespace {

const PhysicalConstants kUnits{};

double flux_moment(const SpectralAmplitude& sp, double x, int order, const Grid1D& tg) {
  const auto df = density_flux(synthesize_slice(sp, x, tg, kUnits), kUnits);
  return moment_time_rep(flux_measure(tg, df.j, FluxSign::both), order);
}

double flux_moment(const SpectralAmplitude& sp, double x, int order) {
  return flux_moment(sp, x, order, suggest_time_grid(sp, x, kUnits));
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_CASE("flux measure selection and normalization") {
  const Grid1D tg = Grid1D::span(-5.0, 5.0, 201);
  std::vector<double> bump(tg.count()), signed_j(tg.count());
  for (std::size_t i = 0; i < tg.count(); ++i) {
    const double t = tg.point(i);
    bump[i] = std::exp(-(t - 0.7) * (t - 0.7));
    signed_j[i] = std::sin(t) * std::exp(-t * t / 4.0) + 0.2 * std::exp(-t * t);
  }
  const auto both = flux_measure(tg, bump, FluxSign::both), plus = flux_measure(tg, bump, FluxSign::plus);
  for (std::size_t i = 0; i < tg.count(); ++i) CHECK(both.weight[i] == doctest::Approx(plus.weight[i]));
  CHECK(moment_time_rep(both, 0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(moment_time_rep(both, 1) == doctest::Approx(0.7).epsilon(1e-8));

  const auto minus = flux_measure(tg, signed_j, FluxSign::minus);
  for (std::size_t i = 0; i < tg.count(); ++i) {
    if (signed_j[i] >= 0.0) CHECK(minus.weight[i] == 0.0);
  }
  CHECK(moment_time_rep(minus, 0) == doctest::Approx(1.0));

  CHECK_THROWS_WITH(flux_measure(tg, std::vector<double>(tg.count(), 0.0), FluxSign::both),
                    "zero flux: time measure undefined");
  CHECK_THROWS_WITH(flux_measure(tg, bump, FluxSign::minus), "zero flux: time measure undefined");
}

TEST_CASE("time-representation moments on symmetric weights") {
  const Grid1D tg = Grid1D::span(-10.0, 14.0, 481);
  std::vector<double> rho(tg.count());
  for (std::size_t i = 0; i < tg.count(); ++i) rho[i] = std::exp(-(tg.point(i) - 2.0) * (tg.point(i) - 2.0) / 2.0);
  const auto m = density_measure(tg, rho);
  CHECK(moment_time_rep(m, [](double) { return 1.0; }) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::abs(moment_time_rep(m, [](double t) { return t; }) - 2.0) < 1e-8);
  const auto stats = temporal_stats(m, 4);
  CHECK(stats.variance == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(std::abs(stats.higher.at(3)) < 1e-8);
  CHECK(stats.higher.at(4) == doctest::Approx(3.0).epsilon(1e-8));
  CHECK_THROWS_WITH(density_measure(tg, std::vector<double>(tg.count(), 0.0)), "empty packet");
}

TEST_CASE("signed measure with negative variance is flagged") {
  const Grid1D tg = Grid1D::span(-6.0, 6.0, 241);
  std::vector<double> j(tg.count());
  for (std::size_t i = 0; i < tg.count(); ++i) {
    const double t = tg.point(i);
    j[i] = 5.0 * std::exp(-t * t * 4.0) - std::exp(-(t - 3.0) * (t - 3.0)) - std::exp(-(t + 3.0) * (t + 3.0));
  }
  CHECK(temporal_stats(flux_measure(tg, j, FluxSign::both), 2).indefinite);
}

TEST_CASE("free packet mean arrival") {
  const auto sp = chirped_gaussian(5.0, 0.5, 0.0, 0.0, kUnits);
  const double t = flux_moment(sp, 10.0, 1);
  CHECK(std::abs(t - 10.0 / std::sqrt(10.0)) < 0.02 * 10.0 / std::sqrt(10.0));
  // Frozen from the brute-force oracle below.
  CHECK(t == doctest::Approx(3.1662736275).epsilon(1e-9));
  CHECK(std::abs(oracle::mean_time(oracle::GaussianE{5.0, 0.5}, 10.0) - 3.1662736275) < 1e-8);
}

TEST_CASE("energy representation matches the oracle and the time representation") {
  const oracle::GaussianE ref{4.0, 0.4, 1.3, 0.5};
  const auto sp = chirped_gaussian(4.0, 0.4, 1.3, 0.5, kUnits);
  for (double x : {0.0, 6.0, 15.0}) {
    CAPTURE(x);
    const double e1 = moment_energy_rep(sp, x, 1, kUnits);
    CHECK(std::abs(e1 - oracle::mean_time(ref, x)) < 1e-6 * std::max(1.0, std::abs(e1)));
    CHECK(rel(flux_moment(sp, x, 1), e1) < 1e-3);
    CHECK(rel(flux_moment(sp, x, 2), moment_energy_rep(sp, x, 2, kUnits)) < 1e-3);
  }
}

TEST_CASE("centred packet has zero mean time") {
  const auto sp = chirped_gaussian(5.0, 0.5, 0.0, 0.0, kUnits);
  const double dt = std::sqrt(moment_energy_rep(sp, 0.0, 2, kUnits));
  CHECK(std::abs(moment_energy_rep(sp, 0.0, 1, kUnits)) < 1e-6 * dt);
}

TEST_CASE("energy representation needs a positive order") {
  const auto sp = chirped_gaussian(5.0, 0.5, 0.0, 0.0, kUnits);
  CHECK_THROWS_AS(moment_energy_rep(sp, 0.0, 0, kUnits), PreconditionError);
}

TEST_CASE("bilinear form") {
  const auto sp = chirped_gaussian(5.0, 0.5, 1.0, 0.3, kUnits);
  CHECK(rel(bilinear_mean_time(sp, 8.0, kUnits), moment_energy_rep(sp, 8.0, 1, kUnits)) < 1e-6);

  // Packet cut off at the low grid edge: the one-sided form picks up the
  // boundary term (hbar / 2) v|g|^2 at that edge, the bilinear form does not.
  const Grid1D grid = Grid1D::span(0.2, 6.0, 5801);
  std::vector<cplx> g(grid.count());
  for (std::size_t i = 0; i < grid.count(); ++i) {
    const double e = grid.point(i);
    g[i] = std::exp(-(e - 1.0) * (e - 1.0) / 1.0) * std::polar(1.0, 2.0 * e);
  }
  const SpectralAmplitude cut(Representation::energy, grid, g, {.cutoff = 0.01, .edge_decay = 0.0});
  const double bil = bilinear_mean_time(cut, 3.0, kUnits);
  CHECK(std::isfinite(bil));
  std::vector<double> w(grid.count());
  for (std::size_t i = 0; i < grid.count(); ++i) w[i] = kUnits.velocity(grid.point(i)) * std::norm(g[i]);
  const double denom = integrate(grid, w);
  const double boundary = 0.5 * (w.front() - w.back()) / denom;
  const cplx one_sided = moment_energy_rep_complex(cut, 3.0, 1, kUnits);
  CHECK(std::abs(one_sided - cplx(bil, boundary)) < 1e-6 * std::abs(one_sided));
  CHECK_THROWS_WITH(moment_energy_rep(cut, 3.0, 1, kUnits), "hermiticity violation: check grids");

  const SpectralAmplitude zero(Representation::energy, Grid1D::span(1.0, 2.0, 11), std::vector<cplx>(11));
  CHECK_THROWS_WITH(bilinear_mean_time(zero, 0.0, kUnits), "empty packet");
}

TEST_CASE("uncertainty product for Gaussians") {
  const auto product = [](double sigma) {
    const auto sp = chirped_gaussian(5.0, sigma, 0.0, 0.0, kUnits);
    return uncertainty_product(sp, 5.0, kUnits);
  };
  const auto u = product(0.5);
  CHECK(u.delta_e > 0.0);
  CHECK(u.delta_t > 0.0);
  CHECK(u.product == doctest::Approx(u.delta_e * u.delta_t));
  // Narrower spectra arrive more spread out.
  const auto narrow = product(0.25);
  CHECK(narrow.delta_t > u.delta_t);
  CHECK(std::abs(narrow.product / 0.5 - 1.0) < 0.1);

  // Quasi-monochromatic Gaussian at x = 0: close to the minimum.
  const auto sp = chirped_gaussian(10.0, 0.1, 0.0, 0.0, kUnits);
  CHECK(std::abs(uncertainty_product(sp, 0.0, kUnits).product / 0.5 - 1.0) < 0.1);
}

TEST_CASE("property: dual-representation equivalence") {
  gen::Source src(2024);
  for (int trial = 0; trial < 10; ++trial) {
    const auto c = gen::gaussian_case(src);
    CAPTURE(trial);
    const auto sp = chirped_gaussian(c.e0, c.sigma, c.t0, c.chirp, kUnits);
    const Grid1D tg = suggest_time_grid(sp, c.x, kUnits);
    for (int n : {1, 2}) {
      const double t = flux_moment(sp, c.x, n, tg);
      CHECK(rel(t, moment_energy_rep(sp, c.x, n, kUnits)) < 1e-3);
    }
  }
}

TEST_CASE("property: a time shift translates the mean and keeps the width") {
  gen::Source src(77);
  for (int trial = 0; trial < 6; ++trial) {
    const auto c = gen::gaussian_case(src);
    const double shift = src.uniform(-4.0, 4.0);
    CAPTURE(trial);
    const auto a = chirped_gaussian(c.e0, c.sigma, c.t0, c.chirp, kUnits);
    const auto b = with_time_shift(a, shift, kUnits);
    const double ma = moment_energy_rep(a, c.x, 1, kUnits), mb = moment_energy_rep(b, c.x, 1, kUnits);
    const double va = moment_energy_rep(a, c.x, 2, kUnits) - ma * ma;
    const double vb = moment_energy_rep(b, c.x, 2, kUnits) - mb * mb;
    CHECK(std::abs(mb - ma - shift) < 1e-6);
    CHECK(std::abs(std::sqrt(vb) - std::sqrt(va)) < 1e-6);

    // Time representation on grids shifted by the same amount.
    const Grid1D ta = suggest_time_grid(a, c.x, kUnits);
    const Grid1D tb(ta.start() + shift, ta.step(), ta.count());
    const auto sa = temporal_stats(
        flux_measure(ta, density_flux(synthesize_slice(a, c.x, ta, kUnits), kUnits).j, FluxSign::both), 2);
    const auto sb = temporal_stats(
        flux_measure(tb, density_flux(synthesize_slice(b, c.x, tb, kUnits), kUnits).j, FluxSign::both), 2);
    CHECK(std::abs(sb.mean - sa.mean - shift) < 1e-6);
    CHECK(std::abs(std::sqrt(sb.variance) - std::sqrt(sa.variance)) < 1e-6);
  }
}

TEST_CASE("property: Ehrenfest differences for quasi-monochromatic packets") {
  gen::Source src(9);
  for (int trial = 0; trial < 6; ++trial) {
    const double e0 = src.uniform(2.0, 10.0), sigma = src.uniform(0.01, 0.05) * e0;
    const double x1 = src.uniform(0.0, 10.0), x2 = x1 + src.uniform(2.0, 20.0);
    CAPTURE(trial);
    const auto sp = chirped_gaussian(e0, sigma, 1.0, 0.0, kUnits);
    const double v_bar = kUnits.velocity(energy_mean_variance(sp, kUnits).first);
    const double delay = flux_moment(sp, x2, 1) - flux_moment(sp, x1, 1);
    CHECK(rel(delay, (x2 - x1) / v_bar) < 1e-2);
  }
}

TEST_CASE("property: flux and density moments merge as the spectrum narrows") {
  const auto gap = [](double sigma) {
    const auto sp = chirped_gaussian(5.0, sigma, 0.0, 0.0, kUnits);
    const Grid1D tg = suggest_time_grid(sp, 10.0, kUnits);
    const auto df = density_flux(synthesize_slice(sp, 10.0, tg, kUnits), kUnits);
    const auto f = temporal_stats(flux_measure(tg, df.j, FluxSign::both), 2);
    const auto d = temporal_stats(density_measure(tg, df.rho), 2);
    return std::abs(f.mean - d.mean) / std::sqrt(f.variance);
  };
  const double wide = gap(0.5), mid = gap(0.2), narrow = gap(0.05);
  CHECK(mid < wide);
  CHECK(narrow < mid);
  CHECK(narrow < 0.01);
}

TEST_CASE("property: uncertainty product over random spectra stays near the bound") {
  // The flux-measure variance sits below the density one by about
  // hbar^2 <1 / (16 E^2)>, so the product may dip under hbar / 2 by that much.
  gen::Source src(4);
  for (int trial = 0; trial < 8; ++trial) {
    const auto c = gen::gaussian_case(src);
    CAPTURE(trial);
    const auto sp = chirped_gaussian(c.e0, c.sigma, c.t0, c.chirp, kUnits);
    const auto u = uncertainty_product(sp, c.x, kUnits);
    CHECK(u.product > 0.5 - 1e-3);
  }
}
