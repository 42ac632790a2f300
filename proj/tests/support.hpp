#pragma once

#include <initializer_list>
#include <random>
#include <vector>

#include "rqpe/circuit.hpp"
#include "rqpe/exactmath.hpp"
#include "rqpe/phase_set.hpp"

namespace rqpe::testing {

inline std::vector<Integer> ints(std::initializer_list<long long> values) {
  std::vector<Integer> out;
  for (auto v : values) out.emplace_back(v);
  return out;
}

inline Rational frac(long long p, long long q) { return Rational(Integer(p), Integer(q)); }

inline PhaseSet phases_over(std::initializer_list<long long> numerators, long long d) {
  std::vector<Rational> values;
  for (auto x : numerators) values.push_back(frac(x, d));
  return normalize_phase_set(values);
}

inline PhaseSet fig1_phases() { return phases_over({21, 22, 64, 65, 107, 108}, 64); }
inline PhaseSet fig2_phases() { return phases_over({66, 93, 108, 123, 138}, 70); }
inline PhaseSet qpe_phases(int qubits) {
  const long long d = 1LL << (qubits - 1);
  PhaseSet set;
  set.denominator = d;
  for (long long x = 0; x < 2 * d; ++x) set.numerators.emplace_back(x);
  return set;
}
inline PhaseSet ri_phases(long long d) { return phases_over({0, 1}, d); }
inline PhaseSet rqpe61_phases() { return phases_over({0, 1, 6, 7}, 6); }

/// Random hypothesis set with common denominator d <= max_d and 2 <= m <= max_m
/// distinct numerators in [0, 2d).
inline PhaseSet random_phase_set(std::mt19937_64& rng, long long max_d, std::size_t max_m) {
  const long long d = std::uniform_int_distribution<long long>(1, max_d)(rng);
  const std::size_t cap = std::min<std::size_t>(max_m, static_cast<std::size_t>(2 * d));
  const std::size_t m = std::uniform_int_distribution<std::size_t>(2, std::max<std::size_t>(2, cap))(rng);
  std::vector<long long> pool(static_cast<std::size_t>(2 * d));
  for (long long x = 0; x < 2 * d; ++x) pool[static_cast<std::size_t>(x)] = x;
  std::shuffle(pool.begin(), pool.end(), rng);
  PhaseSet set;
  set.denominator = d;
  for (std::size_t i = 0; i < std::min(m, pool.size()); ++i) set.numerators.emplace_back(pool[i]);
  std::sort(set.numerators.begin(), set.numerators.end());
  return set;
}

}  // namespace rqpe::testing
