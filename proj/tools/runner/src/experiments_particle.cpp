#include <algorithm>
#include <cmath>
#include <numbers>

#include "qtime/dwell_time.hpp"
#include "qtime/sampling.hpp"
#include "qtime/time_moments.hpp"
#include "support.hpp"

namespace qtime::runner {

using detail::make_table;
using detail::relative_gap;

namespace {

struct TimeGridSpec {
  double half_widths;
  double per_width;
};

TimeGridSpec time_spec(const Scenario& s) {
  return {s.grid("time_half_widths", 12.0), s.grid("time_per_width", 60.0)};
}

double time_rep_moment(const SpectralAmplitude& sp, double x, const Grid1D& tg, int order,
                       const PhysicalConstants& c) {
  const auto df = density_flux(synthesize_slice(sp, x, tg, c), c);
  return moment_time_rep(flux_measure(tg, df.j, FluxSign::both), order);
}

}  // namespace

ResultTable run_synthesize(const Scenario& s) {
  const auto& c = s.constants;
  c.validate();
  const double e0 = s.number("e0"), sigma = s.number("sigma"), x = s.number("x");
  const double t0 = s.number("time_shift", 0.0);
  const bool momentum = s.text("representation", "energy") == "momentum";
  const double v0 = c.velocity(e0);
  const auto ts = time_spec(s);
  auto table = make_table(s);
  auto& meta = table.metadata();

  // A momentum packet gets the same centre and the width sigma_k = sigma / (hbar v0).
  SpectralAmplitude sp = [&] {
    if (!momentum) return chirped_gaussian(e0, sigma, t0, 0.0, c, s.grid("steps_per_sigma", 200.0));
    const double k0 = c.wavenumber(e0), sk = sigma / (c.hbar * v0);
    const auto kgrid = default_momentum_grid(k0, sk, s.grid("steps_per_sigma", 100.0));
    return with_time_shift(gaussian_spectrum(k0, sk, Representation::momentum, kgrid, c), t0, c);
  }();

  const Grid1D tg = suggest_time_grid(sp, x, c, ts.half_widths, ts.per_width);
  const auto slice = synthesize_slice(sp, x, tg, c);
  const auto df = density_flux(slice, c);
  table.add_column("t", tg.points());
  table.add_complex_column("psi", slice.psi);
  table.add_column("rho", df.rho);
  table.add_column("j", df.j);

  const double courant = s.grid("courant", 0.5);
  const double dx = courant * v0 * tg.step();
  const double r1 = continuity_residual(sp, x, dx, tg, c);
  const double r2 = continuity_residual(sp, x, dx / 2.0, tg.refined(), c);
  table.add_check("continuity_residual", r1, "<", 1e-4);
  table.add_check("continuity_halving_ratio", r1 / r2, ">=", 3.0);
  meta["convergence"] = {{"continuity_residual", r1}, {"continuity_residual_half_step", r2}};
  meta["grids_used"] = {{"time_start", tg.start()}, {"time_step", tg.step()}, {"time_count", tg.count()},
                        {"spectral_start", sp.grid().start()}, {"spectral_step", sp.grid().step()},
                        {"spectral_count", sp.grid().count()}, {"dx", dx}};

  // int j dt at x against int |Psi|^2 dx at the mean passage time.
  const double flux_total = integrate(tg, df.j);
  const double t_mean = moment_time_rep(flux_measure(tg, df.j, FluxSign::both), 1);
  const double k_max = std::abs(sp.wavenumber_at(sp.grid().count() - 1, c));
  const double half = 0.5 * v0 * (tg.last() - tg.start());
  auto intervals = static_cast<std::size_t>(std::ceil(2.0 * half / (std::numbers::pi / (8.0 * k_max))));
  intervals += intervals % 2;
  const Grid1D xg = Grid1D::span(x - half, x + half, intervals + 1);
  const auto profile = synthesize_profile(sp, t_mean, xg, c);
  if (!edges_decayed(profile, 1e-6)) throw NumericalGuardError("spatial window too small");
  std::vector<double> dens(profile.size());
  for (std::size_t i = 0; i < dens.size(); ++i) dens[i] = std::norm(profile[i]);
  const double density_total = integrate(xg, dens);
  table.add_check("flux_vs_density_norm_gap", relative_gap(flux_total, density_total), "<", 1e-6);
  meta["flux_integral"] = flux_total;
  meta["density_integral"] = density_total;

  if (momentum) {
    const auto& kg = sp.grid();
    const double k_lo = std::max(kg.start(), sp.limits().cutoff);
    const Grid1D eg = Grid1D::span(c.energy_of_k(k_lo), c.energy_of_k(kg.last()), 4 * kg.count() + 1);
    const double norm = two_component_norm(momentum_to_two_component(sp, eg, c));
    table.add_check("two_component_norm_error", std::abs(norm - 1.0), "<", 1e-4);
    meta["two_component_norm"] = norm;
  }
  return table;
}

ResultTable run_moments(const Scenario& s) {
  const auto& c = s.constants;
  c.validate();
  const auto ts = time_spec(s);
  const double steps = s.grid("steps_per_sigma", 200.0);
  const int max_order = static_cast<int>(s.number("max_order", 2.0));
  if (max_order < 1) throw PreconditionError("max_order must be >= 1");
  auto table = make_table(s);
  auto& meta = table.metadata();

  if (s.has("e0")) {
    const double e0 = s.number("e0"), sigma = s.number("sigma"), x = s.number("x");
    const auto sp = chirped_gaussian(e0, sigma, s.number("time_shift", 0.0), s.number("chirp", 0.0), c, steps);
    const Grid1D tg = suggest_time_grid(sp, x, c, ts.half_widths, ts.per_width);
    const auto df = density_flux(synthesize_slice(sp, x, tg, c), c);
    const auto measure = flux_measure(tg, df.j, FluxSign::both);
    const auto df_fine = density_flux(synthesize_slice(sp, x, tg.refined(), c), c);
    const auto measure_fine = flux_measure(tg.refined(), df_fine.j, FluxSign::both);

    std::vector<double> orders, trep, erep, gaps;
    nlohmann::json conv = nlohmann::json::object();
    for (int n = 1; n <= max_order; ++n) {
      const double a = moment_time_rep(measure, n), b = moment_energy_rep(sp, x, n, c);
      orders.push_back(n);
      trep.push_back(a);
      erep.push_back(b);
      gaps.push_back(relative_gap(a, b));
      table.add_check("dual_gap_order_" + std::to_string(n), gaps.back(), "<", 1e-3);
      conv["time_rep_refined_change_order_" + std::to_string(n)] =
          relative_gap(moment_time_rep(measure_fine, n), a);
    }
    table.add_column("order", orders);
    table.add_column("time_rep", trep);
    table.add_column("energy_rep", erep);
    table.add_column("relative_gap", gaps);

    const double bilinear = bilinear_mean_time(sp, x, c);
    table.add_check("bilinear_vs_energy_rep_gap", relative_gap(bilinear, erep[0]), "<", 1e-3);
    meta["bilinear_mean_time"] = bilinear;
    meta["convergence"] = conv;
    meta["grids_used"] = {{"time_start", tg.start()}, {"time_step", tg.step()}, {"time_count", tg.count()},
                          {"spectral_step", sp.grid().step()}, {"spectral_count", sp.grid().count()}};

    if (s.has("x2")) {
      const double x2 = s.number("x2");
      const Grid1D tg2 = suggest_time_grid(sp, x2, c, ts.half_widths, ts.per_width);
      const double delay = time_rep_moment(sp, x2, tg2, 1, c) - trep[0];
      const double v_bar = c.velocity(energy_mean_variance(sp, c).first);
      const double expected = (x2 - x) / v_bar;
      table.add_check("ehrenfest_relative_error", relative_gap(delay, expected), "<", 1e-2);
      table.add_check("quasi_monochromatic_ratio", sigma / e0, "<=", 0.05);
      meta["ehrenfest"] = {{"delay", delay}, {"expected", expected}, {"mean_velocity", v_bar}};
    }
    return table;
  }

  // Randomized admissible spectra.
  const auto count = static_cast<std::size_t>(s.number("count"));
  DeterministicRng rng(static_cast<std::uint64_t>(s.number("seed")));
  std::vector<double> idx, e0s, sigmas, xs, shifts, chirps;
  std::vector<std::vector<double>> trep(max_order), erep(max_order), gaps(max_order);
  for (std::size_t i = 0; i < count; ++i) {
    const auto sample = sample_admissible_spectrum(rng, c, {}, steps);
    const Grid1D tg = suggest_time_grid(sample.spectrum, sample.x, c, ts.half_widths, ts.per_width);
    const auto df = density_flux(synthesize_slice(sample.spectrum, sample.x, tg, c), c);
    const auto measure = flux_measure(tg, df.j, FluxSign::both);
    idx.push_back(static_cast<double>(i));
    e0s.push_back(sample.e0);
    sigmas.push_back(sample.sigma);
    xs.push_back(sample.x);
    shifts.push_back(sample.time_shift);
    chirps.push_back(sample.chirp);
    for (int n = 1; n <= max_order; ++n) {
      const double a = moment_time_rep(measure, n), b = moment_energy_rep(sample.spectrum, sample.x, n, c);
      trep[n - 1].push_back(a);
      erep[n - 1].push_back(b);
      gaps[n - 1].push_back(relative_gap(a, b));
    }
  }
  table.add_column("index", idx);
  table.add_column("e0", e0s);
  table.add_column("sigma", sigmas);
  table.add_column("x", xs);
  table.add_column("time_shift", shifts);
  table.add_column("chirp", chirps);
  for (int n = 1; n <= max_order; ++n) {
    const std::string suffix = "_" + std::to_string(n);
    const double worst = gaps[n - 1].empty() ? 0.0 : *std::max_element(gaps[n - 1].begin(), gaps[n - 1].end());
    table.add_column("time_rep" + suffix, trep[n - 1]);
    table.add_column("energy_rep" + suffix, erep[n - 1]);
    table.add_column("relative_gap" + suffix, gaps[n - 1]);
    table.add_check("max_dual_gap_order" + suffix, worst, "<", 1e-3);
  }
  table.add_check("sample_count", static_cast<double>(count), ">=", 20.0);
  return table;
}

ResultTable run_uncertainty(const Scenario& s) {
  const auto& c = s.constants;
  c.validate();
  const auto ts = time_spec(s);
  const double steps = s.grid("steps_per_sigma", 200.0);
  const auto count = static_cast<std::size_t>(s.number("count"));
  DeterministicRng rng(static_cast<std::uint64_t>(s.number("seed")));
  auto table = make_table(s);

  std::vector<double> idx, e0s, sigmas, xs, de, dt, prod, ok;
  double worst = std::numeric_limits<double>::infinity();
  std::size_t violations = 0;
  for (std::size_t i = 0; i < count; ++i) {
    const auto sample = sample_admissible_spectrum(rng, c, {}, steps);
    const Grid1D tg = suggest_time_grid(sample.spectrum, sample.x, c, ts.half_widths, ts.per_width);
    const auto u = uncertainty_product(sample.spectrum, sample.x, c, tg);
    idx.push_back(static_cast<double>(i));
    e0s.push_back(sample.e0);
    sigmas.push_back(sample.sigma);
    xs.push_back(sample.x);
    de.push_back(u.delta_e);
    dt.push_back(u.delta_t);
    prod.push_back(u.product);
    ok.push_back(u.bound_satisfied ? 1.0 : 0.0);
    worst = std::min(worst, u.product);
    if (!u.bound_satisfied) ++violations;
  }
  table.add_column("index", idx);
  table.add_column("e0", e0s);
  table.add_column("sigma", sigmas);
  table.add_column("x", xs);
  table.add_column("delta_e", de);
  table.add_column("delta_t", dt);
  table.add_column("product", prod);
  table.add_column("bound_satisfied", ok);
  table.add_check("sample_count", static_cast<double>(count), ">=", 100.0);
  table.add_check("min_product_minus_bound", worst - c.hbar / 2.0, ">=", -1e-9);
  table.metadata()["violations"] = violations;

  const double me0 = s.number("minimal_e0", 10.0), msig = s.number("minimal_sigma", 0.1);
  const double mx = s.number("minimal_x", 0.0);
  const auto minimal = chirped_gaussian(me0, msig, 0.0, 0.0, c, steps);
  const auto u = uncertainty_product(minimal, mx, c, suggest_time_grid(minimal, mx, c, ts.half_widths, ts.per_width));
  table.add_check("near_minimal_relative_distance", std::abs(u.product / (c.hbar / 2.0) - 1.0), "<", 0.1);
  table.metadata()["near_minimal"] = {{"e0", me0},           {"sigma", msig},         {"x", mx},
                                      {"delta_e", u.delta_e}, {"delta_t", u.delta_t}, {"product", u.product}};
  return table;
}

namespace {

double closed_form_transmission(double e, double v0, double a, const PhysicalConstants& c) {
  if (e < v0) {
    const double kappa = std::sqrt(2.0 * c.mass * (v0 - e)) / c.hbar;
    const double sh = std::sinh(kappa * a);
    return 1.0 / (1.0 + v0 * v0 * sh * sh / (4.0 * e * (v0 - e)));
  }
  const double q = std::sqrt(2.0 * c.mass * (e - v0)) / c.hbar;
  const double sn = std::sin(q * a);
  return 1.0 / (1.0 + v0 * v0 * sn * sn / (4.0 * e * (e - v0)));
}

}  // namespace

ResultTable run_dwell(const Scenario& s) {
  const auto& c = s.constants;
  c.validate();
  const double e0 = s.number("e0"), sigma = s.number("sigma");
  const double height = s.number("barrier_height"), width = s.number("barrier_width");
  const double left = s.number("barrier_left", 0.0);
  const double xi = s.number("xi", left), xf = s.number("xf", left + width);
  if (!(width > 0.0)) throw PreconditionError("barrier_width must be positive");
  const ScatteringSetup setup =
      height == 0.0 ? ScatteringSetup::free() : ScatteringSetup::rectangular_barrier(height, width, left);
  const auto sp = chirped_gaussian(e0, sigma, s.number("time_shift", -10.0), 0.0, c, s.grid("steps_per_sigma", 40.0));
  auto table = make_table(s);

  const double dens = mean_dwell_density(sp, setup, xi, xf, c);
  const double flux = mean_dwell_flux(sp, setup, xi, xf, c);
  const auto state = solve_stationary_perturbed(setup, e0, c);
  const double t2 = std::norm(state.transmission());
  table.add_column("dwell_density", {dens});
  table.add_column("dwell_flux", {flux});
  table.add_column("relative_gap", {relative_gap(dens, flux)});
  table.add_column("transmission_sq", {t2});
  table.add_column("free_traversal_time", {(xf - xi) / c.velocity(e0)});
  table.add_check("dwell_relative_gap", relative_gap(dens, flux), "<", 1e-3);
  table.add_check("unitarity_error", std::abs(t2 + std::norm(state.reflection()) - 1.0), "<", 1e-10);
  if (height != 0.0 && e0 != height) {
    const double closed = closed_form_transmission(e0, height, width, c);
    table.add_check("transmission_closed_form_error", std::abs(t2 - closed), "<", 1e-10);
    table.metadata()["closed_form_transmission"] = closed;
  }
  table.metadata()["grids_used"] = {{"spectral_step", sp.grid().step()}, {"spectral_count", sp.grid().count()},
                                    {"xi", xi}, {"xf", xf}};
  return table;
}

}  // namespace qtime::runner
