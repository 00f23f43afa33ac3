#include "qtime/hamiltonian_time.hpp"

#include <cmath>

namespace qtime {

MomentumFunction::MomentumFunction(Grid1D p_grid, std::vector<cplx> values, double cutoff)
    : grid_(p_grid), values_(std::move(values)), cutoff_(cutoff) {
  if (values_.size() != grid_.count()) throw PreconditionError("momentum values do not match grid");
  const bool positive = grid_.start() >= cutoff_;
  const bool negative = grid_.last() <= -cutoff_;
  if (!positive && !negative) throw PreconditionError("momentum grid must exclude p = 0");
}

namespace {

constexpr cplx kI{0.0, 1.0};

}  // namespace

MomentumFunction apply_T_momentum(const MomentumFunction& psi, const PhysicalConstants& constants) {
  constants.validate();
  const auto& grid = psi.grid();
  const std::size_t n = grid.count();
  std::vector<cplx> over_p(n);
  for (std::size_t i = 0; i < n; ++i) over_p[i] = psi.values()[i] / grid.point(i);
  const auto dpsi = derivative(grid, psi.values());
  const auto d_over_p = derivative(grid, over_p);
  std::vector<cplx> out(n);
  const cplx ih = kI * constants.hbar;
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = -(constants.mass / 2.0) * (ih * dpsi[i] / grid.point(i) + ih * d_over_p[i]);
  }
  return MomentumFunction(grid, std::move(out), psi.cutoff());
}

std::vector<cplx> apply_T_energy_route(const std::function<cplx(double)>& psi, const Grid1D& p_grid, double dE,
                                       const PhysicalConstants& constants) {
  constants.validate();
  if (!(dE > 0.0)) throw PreconditionError("dE must be positive");
  const double sign = p_grid.start() > 0.0 ? 1.0 : -1.0;
  const double mu = constants.mass;
  // phi(E) = U psi at p(E) = sign * sqrt(2 mu E).
  auto phi = [&](double e) {
    const double p = sign * std::sqrt(2.0 * mu * e);
    return std::sqrt(mu / std::abs(p)) * psi(p);
  };
  std::vector<cplx> out(p_grid.count());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double p = p_grid.point(i);
    const double e = p * p / (2.0 * mu);
    if (!(e > 2.0 * dE)) throw PreconditionError("momentum grid must exclude p = 0");
    const cplx dphi = (phi(e - 2.0 * dE) - 8.0 * phi(e - dE) + 8.0 * phi(e + dE) - phi(e + 2.0 * dE)) / (12.0 * dE);
    out[i] = std::sqrt(std::abs(p) / mu) * (-kI * constants.hbar * dphi);
  }
  return out;
}

PolyExp::PolyExp(std::vector<cplx> coeffs, double k) : coeffs_(std::move(coeffs)), k_(k) {
  if (coeffs_.empty()) coeffs_.push_back(0.0);
}

PolyExp PolyExp::times_x() const {
  std::vector<cplx> c(coeffs_.size() + 1);
  for (std::size_t n = 0; n < coeffs_.size(); ++n) c[n + 1] = coeffs_[n];
  return PolyExp(std::move(c), k_);
}

PolyExp PolyExp::scaled(cplx factor) const {
  auto c = coeffs_;
  for (auto& v : c) v *= factor;
  return PolyExp(std::move(c), k_);
}

PolyExp PolyExp::plus(const PolyExp& other) const {
  if (other.k_ != k_) throw PreconditionError("PolyExp terms with different k");
  std::vector<cplx> c(std::max(coeffs_.size(), other.coeffs_.size()));
  for (std::size_t n = 0; n < coeffs_.size(); ++n) c[n] += coeffs_[n];
  for (std::size_t n = 0; n < other.coeffs_.size(); ++n) c[n] += other.coeffs_[n];
  return PolyExp(std::move(c), k_);
}

PolyExp PolyExp::antiderivative() const {
  if (k_ == 0.0) throw PreconditionError("zero velocity");
  // int x^n e^{ax} dx = e^{ax} sum_j (-1)^j n!/(n-j)! x^(n-j) / a^(j+1), a = ik.
  const cplx a = kI * k_;
  std::vector<cplx> c(coeffs_.size());
  for (std::size_t n = 0; n < coeffs_.size(); ++n) {
    cplx factor = coeffs_[n] / a;
    for (std::size_t j = 0; j <= n; ++j) {
      c[n - j] += factor;
      factor *= -static_cast<double>(n - j) / a;
    }
  }
  return PolyExp(std::move(c), k_);
}

cplx PolyExp::envelope(double x) const {
  cplx sum{};
  for (std::size_t n = coeffs_.size(); n-- > 0;) sum = sum * x + coeffs_[n];
  return sum;
}

cplx apply_T_coordinate_planewave(double k, double x, const PhysicalConstants& constants) {
  constants.validate();
  if (k == 0.0) throw PreconditionError("zero velocity");
  const PolyExp wave({1.0}, k);
  const cplx inverse_p = kI / constants.hbar;
  const PolyExp first = wave.times_x().antiderivative().scaled(inverse_p);
  const PolyExp second = wave.antiderivative().scaled(inverse_p).times_x();
  return first.plus(second).scaled(constants.mass / 2.0).envelope(x);
}

double commutator_residual(const MomentumFunction& psi, const PhysicalConstants& constants) {
  const auto& grid = psi.grid();
  const std::size_t n = grid.count();
  if (n < 5) throw PreconditionError("grid too small for derivative");
  auto energy = [&](std::size_t i) { return grid.point(i) * grid.point(i) / (2.0 * constants.mass); };
  std::vector<cplx> h_psi(n);
  for (std::size_t i = 0; i < n; ++i) h_psi[i] = energy(i) * psi.values()[i];
  const auto t_psi = apply_T_momentum(psi, constants);
  const auto t_h_psi = apply_T_momentum(MomentumFunction(grid, h_psi, psi.cutoff()), constants);
  double num = 0.0, den = 0.0;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const cplx r = energy(i) * t_psi.values()[i] - t_h_psi.values()[i] - kI * constants.hbar * psi.values()[i];
    num += std::norm(r);
    den += std::norm(psi.values()[i]);
  }
  return den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
}

cplx inner_product(const MomentumFunction& a, const MomentumFunction& b) {
  if (!(a.grid() == b.grid())) throw PreconditionError("inner product needs a common grid");
  std::vector<cplx> integrand(a.grid().count());
  for (std::size_t i = 0; i < integrand.size(); ++i) integrand[i] = std::conj(a.values()[i]) * b.values()[i];
  return integrate(a.grid(), integrand);
}

}  // namespace qtime
