#include "rqpe/phase_set.hpp"

#include <algorithm>

#include "rqpe/errors.hpp"

namespace rqpe {

Integer PhaseSet::h() const {
  if (numerators.empty()) throw InputError("empty phase set");
  return *std::max_element(numerators.begin(), numerators.end());
}

PhaseSet normalize_phase_set(std::span<const Rational> phases) {
  if (phases.empty()) throw InputError("empty phase list");
  Integer d = 1;
  for (const auto& phase : phases) d = lcm(d, phase.denominator());

  PhaseSet result;
  result.denominator = d;
  for (const auto& phase : phases) {
    const Rational scaled = phase.mod(Rational(2)) * Rational(d);
    result.numerators.push_back(scaled.numerator());
  }
  std::sort(result.numerators.begin(), result.numerators.end());
  result.numerators.erase(std::unique(result.numerators.begin(), result.numerators.end()),
                          result.numerators.end());
  return result;
}

void validate(const PhaseSet& phases) {
  if (phases.denominator < 1) throw InputError("phase set denominator must be positive");
  if (phases.numerators.empty()) throw InputError("phase set is empty");
  const Integer upper = 2 * phases.denominator;
  for (std::size_t i = 0; i < phases.numerators.size(); ++i) {
    const auto& x = phases.numerators[i];
    if (x < 0 || x >= upper) {
      throw InputError("phase numerator " + x.str() + " outside [0, 2d)");
    }
    if (i > 0 && phases.numerators[i - 1] >= x) {
      throw InputError("phase numerators must be sorted and distinct");
    }
  }
}

}  // namespace rqpe
