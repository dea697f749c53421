#pragma once

#include <span>
#include <vector>

#include "cpm/rational.hpp"

namespace cpm {

/// Integer edge costs lifted by the deterministic perturbation.
///
/// Edge i (1-based, input order) gets cost c(e_i) + 2^-i. Everything is kept
/// scaled by 2^m so the perturbed costs stay integral:
///   scaled[i-1] = 2^m * c(e_i) + 2^(m-i).
struct PerturbedCosts {
  std::vector<long> base;
  std::vector<mpz_class> scaled;
  mpz_class scale;  // 2^m

  [[nodiscard]] std::size_t size() const { return base.size(); }
  /// Perturbed cost of edge `e` (0-based) as an unscaled rational.
  [[nodiscard]] Rational perturbed(std::size_t e) const { return Rational(scaled[e], scale); }
  /// Scaled costs as rationals, the form the LP layer consumes.
  [[nodiscard]] std::vector<Rational> scaled_rationals() const;
  /// Converts a scaled quantity back to the original cost units.
  [[nodiscard]] Rational unscale(const Rational& scaled_value) const {
    return scaled_value / Rational(scale);
  }
};

/// Throws std::invalid_argument on an empty sequence.
PerturbedCosts perturb(std::span<const long> costs);

}  // namespace cpm
