#pragma once

#include <span>
#include <vector>

#include "rqpe/exactmath.hpp"
#include "rqpe/phase_set.hpp"

namespace rqpe {

/// One iteration of the reduction: the numerator set it started from, its GCD,
/// the quotient set, the odd addition and the modulus applied to the next set.
struct ReductionStep {
  std::vector<Integer> set;
  Integer gcd;
  std::vector<Integer> quotients;
  Integer add;
  Integer modulus;
  bool phantom = false;
};

struct ReductionTrace {
  std::vector<ReductionStep> steps;
  std::vector<Integer> final_set;
  bool terminated = false;
  bool fallback_used = false;
  // The m-1 qubit bound is reported, not enforced.
  bool exceeds_m_minus_1 = false;

  std::size_t size() const { return steps.size(); }
  std::vector<Integer> gcds() const;
  std::vector<Integer> adds() const;
  std::vector<bool> phantoms() const;
};

/// Mode of the even-minus-odd differences of `quotients`. Pairs are counted per
/// residue class modulo `modulus` (pass 0 for plain integer counting); each class is
/// represented by its smallest-magnitude raw difference. Ties go to the class whose
/// representative has the smaller magnitude, then to the negative one.
/// With no even element the result is -min(quotients).
/// Throws InputError when every element is even.
Integer mode_difference(std::span<const Integer> quotients, const Integer& modulus);

/// 2d / gcd(2d, gcd_product): the smallest period of the reduced numerators once
/// every GCD so far has been divided out.
Integer stage_modulus(const Integer& d, const Integer& gcd_product);

struct QubitBounds {
  int lower = 0;
  int upper = 0;
  friend bool operator==(const QubitBounds&, const QubitBounds&) = default;
};

/// (ceil(log2 m), min(m - 1, floor(log2 h) + 1)).
QubitBounds qubit_bounds(const Integer& m, const Integer& h);

/// The G = [1, 2, 2, ...], A = [-1, -1, ...] ladder with floor(log2 h) + 1 lines.
ReductionTrace default_ladder(const PhaseSet& phases);

/// True when the (G, A) sequence separates every numerator of `phases`: each line
/// phase (x + sum_{k<j} m_k A_k P_k) / P_j is an integer whose parity is m_j, the
/// resulting bitstrings are distinct, and summing bit values recovers x/d mod 2.
bool trace_distinguishes(const PhaseSet& phases, std::span<const Integer> gcds,
                         std::span<const Integer> adds);

/// Runs the GCD / mode reduction on `phases`. Falls back to default_ladder when the
/// reduction needs more than floor(log2 h) + 1 lines or its result does not
/// separate the set. A step keeps its phantom mark only if every numerator
/// actually reads 1 on that line.
ReductionTrace reduce(const PhaseSet& phases);

}  // namespace rqpe
