#include "cpm/perturb.hpp"

#include <stdexcept>

namespace cpm {

PerturbedCosts perturb(std::span<const long> costs) {
  if (costs.empty()) throw std::invalid_argument("perturb: empty cost sequence");
  const auto m = static_cast<unsigned long>(costs.size());
  PerturbedCosts out;
  out.base.assign(costs.begin(), costs.end());
  mpz_ui_pow_ui(out.scale.get_mpz_t(), 2, m);
  out.scaled.reserve(m);
  for (unsigned long i = 1; i <= m; ++i) {
    mpz_class bump;
    mpz_ui_pow_ui(bump.get_mpz_t(), 2, m - i);
    out.scaled.push_back(out.scale * costs[i - 1] + bump);
  }
  return out;
}

std::vector<Rational> PerturbedCosts::scaled_rationals() const {
  std::vector<Rational> out;
  out.reserve(scaled.size());
  for (const auto& s : scaled) out.emplace_back(s);
  return out;
}

}  // namespace cpm
