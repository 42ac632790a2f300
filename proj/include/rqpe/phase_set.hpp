#pragma once

#include <span>
#include <vector>

#include "rqpe/exactmath.hpp"

namespace rqpe {

/// The hypothesis set {pi*x/d : x in numerators}. Numerators are sorted,
/// distinct and lie in [0, 2d).
struct PhaseSet {
  Integer denominator{1};
  std::vector<Integer> numerators;

  /// Largest numerator.
  Integer h() const;
  std::size_t m() const { return numerators.size(); }

  /// Phase of numerator x in units of pi, i.e. x/d.
  Rational phase(const Integer& numerator) const { return Rational(numerator, denominator); }

  friend bool operator==(const PhaseSet&, const PhaseSet&) = default;
};

/// Brings phases (units of pi) to a common denominator d = lcm of their
/// denominators, reduces each into [0, 2) and removes duplicates.
PhaseSet normalize_phase_set(std::span<const Rational> phases);

/// Checks the PhaseSet invariants; throws InputError when violated.
void validate(const PhaseSet& phases);

}  // namespace rqpe
