#include <cmath>
#include <limits>

#include "qtime/discrete_spectrum.hpp"
#include "qtime/hamiltonian_time.hpp"
#include "qtime/photon.hpp"
#include "qtime/sampling.hpp"
#include "support.hpp"

namespace qtime::runner {

using detail::make_table;
using detail::relative_gap;

ResultTable run_photon(const Scenario& s) {
  const auto& c = s.constants;
  c.validate();
  const double k0 = s.number("k0"), width = s.number("width");
  const double x1 = s.number("x1"), x2 = s.number("x2");
  const double steps = s.grid("steps_per_sigma", 40.0);
  const double hw = s.grid("time_half_widths", 12.0), pw = s.grid("time_per_width", 60.0);
  if (!(width > 0.0) || !(k0 - 9.0 * width > 0.0)) throw PreconditionError("photon spectrum must stay at k > 0");
  const auto intervals = 2 * static_cast<std::size_t>(std::ceil(9.0 * steps));
  const Grid1D kg = Grid1D::span(k0 - 9.0 * width, k0 + 9.0 * width, intervals + 1);
  const auto sp = with_time_shift(gaussian_photon_spectrum(k0, width, kg), s.number("time_shift", 0.0), c);
  auto table = make_table(s);
  auto& meta = table.metadata();

  std::vector<double> pos, t1, e1, g1, t2, e2, g2;
  for (double x : {x1, x2}) {
    const Grid1D tg = suggest_photon_time_grid(sp, x, c, hw, pw);
    pos.push_back(x);
    t1.push_back(photon_mean_time(sp, x, tg, c, 1));
    e1.push_back(photon_mean_time_energy_rep(sp, x, c, 1));
    g1.push_back(relative_gap(t1.back(), e1.back()));
    t2.push_back(photon_mean_time(sp, x, tg, c, 2));
    e2.push_back(photon_mean_time_energy_rep(sp, x, c, 2));
    g2.push_back(relative_gap(t2.back(), e2.back()));
  }
  table.add_column("position", pos);
  table.add_column("time_rep_1", t1);
  table.add_column("energy_rep_1", e1);
  table.add_column("relative_gap_1", g1);
  table.add_column("time_rep_2", t2);
  table.add_column("energy_rep_2", e2);
  table.add_column("relative_gap_2", g2);

  const double expected = (x2 - x1) / c.c;
  table.add_check("passage_delay_relative_error", relative_gap(t1[1] - t1[0], expected), "<", 1e-3);
  table.add_check("dual_gap_order_1", std::max(g1[0], g1[1]), "<", 1e-3);
  table.add_check("dual_gap_order_2", std::max(g2[0], g2[1]), "<", 1e-3);

  // At dx = c dt the central differences of a profile moving at c cancel
  // exactly, so the default Courant number is 1/2.
  const Grid1D tg = suggest_photon_time_grid(sp, x1, c, hw, pw);
  const double dx = s.grid("courant", 0.5) * c.c * tg.step();
  const double r1 = em_continuity_residual(sp, x1, dx, tg, c);
  const double r2 = em_continuity_residual(sp, x1, dx / 2.0, tg.refined(), c);
  table.add_check("continuity_residual", r1, "<", 1e-4);
  table.add_check("continuity_halving_ratio", r1 / r2, ">=", 3.0);
  meta["convergence"] = {{"continuity_residual", r1}, {"continuity_residual_half_step", r2}};
  meta["grids_used"] = {{"k_start", kg.start()}, {"k_step", kg.step()}, {"k_count", kg.count()},
                        {"time_step_x1", tg.step()}, {"dx", dx}};
  return table;
}

namespace {

MomentumFunction gaussian_on(const Grid1D& grid, double p0, double width, double t0, const PhysicalConstants& c) {
  std::vector<cplx> values(grid.count());
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double p = grid.point(i), d = p - p0;
    values[i] = std::exp(-d * d / (4.0 * width * width)) * std::polar(1.0, p * p * t0 / (2.0 * c.mass * c.hbar));
  }
  return MomentumFunction(grid, std::move(values));
}

MomentumFunction gaussian_momentum(double p0, double width, double t0, double step, const PhysicalConstants& c) {
  const auto intervals = 2 * static_cast<std::size_t>(std::ceil(9.0 * width / step));
  return gaussian_on(Grid1D(p0 - 0.5 * static_cast<double>(intervals) * step, step, intervals + 1), p0, width, t0, c);
}

double interior_relative_l2(std::span<const cplx> a, std::span<const cplx> b, std::size_t skip) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = skip; i + skip < a.size(); ++i) {
    num += std::norm(a[i] - b[i]);
    den += std::norm(b[i]);
  }
  return std::sqrt(num / den);
}

}  // namespace

ResultTable run_hamiltonian_check(const Scenario& s) {
  const auto& c = s.constants;
  c.validate();
  const double p0 = s.number("p0"), width = s.number("width");
  const double t0 = s.number("time_shift", 1.0);
  const double step = s.grid("step", 1e-3);
  if (!(width > 0.0) || !(step > 0.0)) throw PreconditionError("width and step must be positive");
  auto table = make_table(s);
  auto& meta = table.metadata();

  const auto psi = gaussian_momentum(p0, width, t0, step, c);
  const auto t_psi = apply_T_momentum(psi, c);
  table.add_column("p", psi.grid().points());
  table.add_complex_column("psi", psi.values());
  table.add_complex_column("t_psi", t_psi.values());

  // Plane-wave eigenvalue through the coordinate form.
  const double k = s.number("k"), x = s.number("x");
  const cplx ratio = apply_T_coordinate_planewave(k, x, c);
  const double classical = x / (c.hbar * k / c.mass);
  table.add_check("eigenvalue_literal_error", std::abs(ratio - classical), "<", 1e-12);
  table.add_check("eigenvalue_real_part_error", std::abs(ratio.real() - classical), "<", 1e-12);
  meta["eigenvalue"] = {{"re", ratio.real()},
                        {"im", ratio.imag()},
                        {"classical", classical},
                        {"ordering_term", c.mass / (2.0 * c.hbar * k * k)}};

  const double r1 = commutator_residual(psi, c);
  const double r2 = commutator_residual(gaussian_momentum(p0, width, t0, step / 2.0, c), c);
  table.add_check("commutator_residual", r1, "<", 1e-4);
  table.add_check("commutator_halving_ratio", r1 / r2, ">=", 3.0);

  const auto fn = [&](double p) {
    const double d = p - p0;
    return std::exp(-d * d / (4.0 * width * width)) * std::polar(1.0, p * p * t0 / (2.0 * c.mass * c.hbar));
  };
  const double de = std::abs(p0) * step / c.mass;
  const auto routed = apply_T_energy_route(fn, psi.grid(), de, c);
  const double equivalence = interior_relative_l2(t_psi.values(), routed, 2);
  table.add_check("energy_route_equivalence", equivalence, "<", 1e-5);

  const auto phi = gaussian_on(psi.grid(), p0 + 0.3 * width, 0.8 * width, 0.0, c);
  const auto t_phi = apply_T_momentum(phi, c);
  const cplx lhs = inner_product(phi, t_psi), rhs = inner_product(t_phi, psi);
  const double herm = std::abs(lhs - rhs) / std::abs(lhs);
  table.add_check("hermiticity_error", herm, "<", 1e-6);
  meta["convergence"] = {{"commutator_residual", r1}, {"commutator_residual_half_step", r2}};
  meta["grids_used"] = {{"p_start", psi.grid().start()}, {"p_step", step}, {"p_count", psi.grid().count()},
                        {"energy_step", de}};
  return table;
}

namespace {

std::vector<cplx> complex_list(const Scenario& s, const std::string& key) {
  std::vector<cplx> out;
  for (const auto& item : s.parameters.at(key)) {
    if (item.is_number()) out.emplace_back(item.get<double>(), 0.0);
    else out.emplace_back(item[0].get<double>(), item[1].get<double>());
  }
  return out;
}

/// psi(x, t) summed without reducing t.
cplx direct_sum(const BoundSystem& sys, double x, double t) {
  cplx acc{};
  const auto a = sys.amplitudes(x);
  for (std::size_t n = 0; n < sys.size(); ++n) {
    acc += a[n] * std::polar(1.0, -(sys.levels()[n] - sys.levels()[0]) * t / sys.constants().hbar);
  }
  return acc;
}

double periodicity_error(const BoundSystem& sys, double x) {
  const auto a = sys.amplitudes(x);
  double scale = 0.0;
  for (const auto& v : a) scale += std::abs(v);
  double worst = 0.0;
  const double period = sys.period();
  for (int i = 0; i < 16; ++i) {
    const double t = period * (static_cast<double>(i) / 16.0 - 0.5);
    worst = std::max(worst, std::abs(direct_sum(sys, x, t + period) - direct_sum(sys, x, t)));
  }
  return worst / scale;
}

struct ConvergencePoint {
  double divisor;
  double two_level;
  double differential;
};

/// Two levels E0 and E0 + D with amplitudes sampled from a smooth A(E).
ConvergencePoint two_level_limit(double e0, double sigma, double shift, double d, const PhysicalConstants& c) {
  const double beta = 0.3;
  const auto amp = [&](double e) {
    const double u = e - e0;
    return std::exp(-u * u / (4.0 * sigma * sigma)) * std::polar(1.0, shift * e / c.hbar + beta * u * u);
  };
  const double levels[] = {e0, e0 + d};
  const cplx amps[] = {amp(e0), amp(e0 + d)};
  // dA/dE at e0: the Gaussian factor is stationary there, the phase slope is shift / hbar.
  const cplx slope = amp(e0) * cplx(0.0, shift / c.hbar);
  return {d, time_operator_amplitudes(levels, amps, d, c), differential_mean_time(amp(e0), slope, c)};
}

}  // namespace

ResultTable run_discrete(const Scenario& s) {
  const auto& c = s.constants;
  c.validate();
  const auto gammas = s.numbers("gammas", {-0.25, 0.0, 0.25});
  auto table = make_table(s);
  auto& meta = table.metadata();

  std::vector<double> idx, nlev, gam, mean, vare, vart, prod, rhs, sat, rob, rob_sat, period_err, dual;
  std::vector<std::string> catalogs;
  double worst_period = 0.0, worst_dual = 0.0, worst_two_level = 0.0;
  bool saw_two_level = false;
  std::size_t violations = 0, robertson_violations = 0, rows = 0;

  const auto record = [&](std::size_t index, const std::string& catalog, const BoundSystem& sys, double x) {
    const double perr = periodicity_error(sys, x);
    const double gap = std::abs(mean_time_discrete(sys, x, 1) - time_operator_energy_rep(sys, x)) / sys.period();
    worst_period = std::max(worst_period, perr);
    worst_dual = std::max(worst_dual, gap);
    if (sys.size() == 2) {
      saw_two_level = true;
      worst_two_level = std::max(worst_two_level, gap);
    }
    for (double g : gammas) {
      const auto u = generalized_uncertainty(sys, g * sys.period(), x);
      idx.push_back(static_cast<double>(index));
      catalogs.push_back(catalog);
      nlev.push_back(static_cast<double>(sys.size()));
      gam.push_back(g * sys.period());
      mean.push_back(u.mean_t);
      vare.push_back(u.var_e);
      vart.push_back(u.var_t);
      prod.push_back(u.var_e * u.var_t);
      rhs.push_back(u.rhs_bound);
      sat.push_back(u.satisfied ? 1.0 : 0.0);
      rob.push_back(u.robertson_bound);
      rob_sat.push_back(u.robertson_satisfied ? 1.0 : 0.0);
      period_err.push_back(perr);
      dual.push_back(gap);
      if (!u.satisfied) ++violations;
      if (!u.robertson_satisfied) ++robertson_violations;
      ++rows;
    }
  };

  const std::string mode = s.text("mode", "");
  if (mode == "explicit") {
    const std::string catalog = s.text("catalog", "");
    const auto coeffs = complex_list(s, "coefficients");
    const auto kind = catalog == "box" ? CatalogKind::rigid_box : CatalogKind::harmonic_oscillator;
    const auto sys = build_catalog_system(kind, coeffs.size(), coeffs, c);
    record(0, catalog, sys, s.number("x", sys.probe()));
    meta["divisor"] = sys.divisor();
    meta["period"] = sys.period();
  } else {
    const auto count = static_cast<std::size_t>(s.number("count"));
    const auto lo = static_cast<std::size_t>(s.number("min_levels", 2.0));
    const auto hi = static_cast<std::size_t>(s.number("max_levels", 8.0));
    if (lo < 2 || hi < lo) throw PreconditionError("level range must satisfy 2 <= min_levels <= max_levels");
    DeterministicRng rng(static_cast<std::uint64_t>(s.number("seed")));
    for (std::size_t i = 0; i < count; ++i) {
      const std::size_t n = lo + rng.index(hi - lo + 1);
      const bool box = rng.uniform() < 0.5;
      std::vector<cplx> coeffs(n);
      for (auto& v : coeffs) v = {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
      const auto sys =
          build_catalog_system(box ? CatalogKind::rigid_box : CatalogKind::harmonic_oscillator, n, coeffs, c);
      record(i, box ? "box" : "oscillator", sys, sys.probe());
    }
    table.add_check("system_count", static_cast<double>(count), ">=", 100.0);

    // One populated level: |psi|^2 is constant in t.
    const auto single = build_catalog_system(CatalogKind::harmonic_oscillator, 2, {1.0, 0.0}, c);
    const auto u = generalized_uncertainty(single, 0.0);
    table.add_check("single_level_rhs", u.rhs_bound, "==", 0.0);
    meta["single_level"] = {{"rhs_bound", u.rhs_bound}, {"var_t", u.var_t}, {"period", single.period()}};

    // Two-level pairwise mean time against its continuum limit as D -> 0.
    const double ce0 = s.number("convergence_e0", 5.0), csig = s.number("convergence_sigma", 0.5);
    const double cshift = s.number("convergence_shift", 2.0);
    nlohmann::json pts = nlohmann::json::array();
    std::vector<double> errors;
    for (double d : {0.08, 0.04, 0.02, 0.01}) {
      const auto p = two_level_limit(ce0, csig, cshift, d, c);
      errors.push_back(std::abs(p.two_level - p.differential));
      pts.push_back({{"divisor", d}, {"two_level", p.two_level}, {"differential", p.differential}});
    }
    const double order = std::log2(errors[errors.size() - 2] / errors.back());
    table.add_check("continuum_limit_order_low", order, ">=", 0.8);
    table.add_check("continuum_limit_order_high", order, "<=", 1.2);
    meta["continuum_limit"] = {{"points", pts}, {"observed_order", order}};
  }

  table.add_column("system", idx);
  table.add_text_column("catalog", catalogs);
  table.add_column("levels", nlev);
  table.add_column("gamma", gam);
  table.add_column("mean_t", mean);
  table.add_column("var_e", vare);
  table.add_column("var_t", vart);
  table.add_column("product", prod);
  table.add_column("rhs_bound", rhs);
  table.add_column("bound_satisfied", sat);
  table.add_column("robertson_bound", rob);
  table.add_column("robertson_satisfied", rob_sat);
  table.add_column("periodicity_error", period_err);
  table.add_column("dual_gap_over_period", dual);

  table.add_check("periodicity_error", worst_period, "<", 1e-12);
  table.add_check("dual_gap_over_period", worst_dual, "<", 1e-3);
  if (saw_two_level) {
    table.add_check("two_level_dual_gap_over_period", worst_two_level, "<", 1e-3);
  }
  table.add_check("bound_violations", static_cast<double>(violations), "==", 0.0);
  table.add_check("robertson_violations", static_cast<double>(robertson_violations), "==", 0.0);
  meta["rows"] = rows;
  return table;
}

ResultTable run_experiment(const Scenario& scenario) {
  switch (scenario.kind) {
    case Kind::synthesize: return run_synthesize(scenario);
    case Kind::moments: return run_moments(scenario);
    case Kind::uncertainty: return run_uncertainty(scenario);
    case Kind::dwell: return run_dwell(scenario);
    case Kind::photon: return run_photon(scenario);
    case Kind::hamiltonian_check: return run_hamiltonian_check(scenario);
    case Kind::discrete: return run_discrete(scenario);
  }
  throw std::logic_error("unhandled scenario kind");
}

}  // namespace qtime::runner
