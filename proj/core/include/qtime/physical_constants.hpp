#pragma once

#include <cmath>

#include "qtime/errors.hpp"

namespace qtime {

/// Natural units by default (hbar = mass = c = 1).
struct PhysicalConstants {
  double hbar = 1.0;
  double mass = 1.0;
  double c = 1.0;

  void validate() const {
    if (!(hbar > 0.0) || !(mass > 0.0) || !(c > 0.0)) {
      throw PreconditionError("physical constants must be strictly positive");
    }
  }

  /// Free-particle relations E = mu v^2 / 2 = hbar^2 k^2 / (2 mu).
  double velocity(double energy) const { return std::sqrt(2.0 * energy / mass); }
  double wavenumber(double energy) const { return std::sqrt(2.0 * mass * energy) / hbar; }
  double energy_of_k(double k) const { return hbar * hbar * k * k / (2.0 * mass); }
};

}  // namespace qtime
