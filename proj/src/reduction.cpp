#include "rqpe/reduction.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>

#include "rqpe/errors.hpp"

namespace rqpe {
namespace {

bool is_odd(const Integer& value) { return boost::multiprecision::bit_test(boost::multiprecision::abs(value), 0); }

Integer floor_mod(const Integer& value, const Integer& modulus) {
  Integer r = value % modulus;
  if (r < 0) r += modulus;
  return r;
}

std::vector<Integer> sorted_unique(std::vector<Integer> values) {
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  return values;
}

// Candidate ordering for mode_difference: smaller |v| first, negative before positive.
bool preferred(const Integer& a, const Integer& b) {
  const Integer abs_a = boost::multiprecision::abs(a);
  const Integer abs_b = boost::multiprecision::abs(b);
  if (abs_a != abs_b) return abs_a < abs_b;
  return a < b;
}

}  // namespace

std::vector<Integer> ReductionTrace::gcds() const {
  std::vector<Integer> out;
  for (const auto& s : steps) out.push_back(s.gcd);
  return out;
}

std::vector<Integer> ReductionTrace::adds() const {
  std::vector<Integer> out;
  for (const auto& s : steps) out.push_back(s.add);
  return out;
}

std::vector<bool> ReductionTrace::phantoms() const {
  std::vector<bool> out;
  for (const auto& s : steps) out.push_back(s.phantom);
  return out;
}

Integer mode_difference(std::span<const Integer> quotients, const Integer& modulus) {
  if (quotients.empty()) throw InputError("mode_difference of empty set");
  std::vector<Integer> evens, odds;
  for (const auto& y : quotients) (is_odd(y) ? odds : evens).push_back(y);
  if (odds.empty()) throw InputError("caller must divide by GCD first");
  if (evens.empty()) return -*std::min_element(odds.begin(), odds.end());

  struct Tally {
    std::size_t count = 0;
    Integer representative;
  };
  std::map<Integer, Tally> classes;
  for (const auto& e : evens) {
    for (const auto& o : odds) {
      const Integer v = e - o;
      auto& tally = classes[modulus > 0 ? floor_mod(v, modulus) : v];
      if (tally.count == 0 || preferred(v, tally.representative)) tally.representative = v;
      ++tally.count;
    }
  }
  const Tally* best = nullptr;
  for (const auto& [key, tally] : classes) {
    if (best == nullptr || tally.count > best->count ||
        (tally.count == best->count && preferred(tally.representative, best->representative))) {
      best = &tally;
    }
  }
  return best->representative;
}

Integer stage_modulus(const Integer& d, const Integer& gcd_product) {
  if (d < 1 || gcd_product < 1) throw InputError("stage_modulus expects positive inputs");
  const Integer two_d = 2 * d;
  return two_d / boost::multiprecision::gcd(two_d, gcd_product);
}

QubitBounds qubit_bounds(const Integer& m, const Integer& h) {
  if (m < 1 || h < 1) throw InputError("qubit_bounds expects m >= 1 and h >= 1");
  const Integer by_count = m - 1;
  const Integer by_range = floor_log2(h) + 1;
  return {ceil_log2(m), static_cast<int>(std::min(by_count, by_range))};
}

ReductionTrace default_ladder(const PhaseSet& phases) {
  validate(phases);
  const Integer h = phases.h();
  const int lines = h < 1 ? 1 : floor_log2(h) + 1;

  ReductionTrace trace;
  trace.fallback_used = true;
  std::vector<Integer> set = phases.numerators;
  Integer product = 1;
  for (int i = 0; i < lines; ++i) {
    ReductionStep step;
    step.set = set;
    step.gcd = i == 0 ? 1 : 2;
    product *= step.gcd;
    step.modulus = stage_modulus(phases.denominator, product);
    step.add = -1;
    bool any_even = false;
    std::vector<Integer> next;
    for (const auto& x : set) {
      const Integer y = x / step.gcd;
      step.quotients.push_back(y);
      if (is_odd(y)) {
        next.push_back(y - 1);
      } else {
        any_even = true;
        next.push_back(y);
      }
    }
    step.phantom = !any_even;
    set = sorted_unique(std::move(next));
    trace.steps.push_back(std::move(step));
  }
  trace.final_set = set;
  trace.terminated = true;
  trace.exceeds_m_minus_1 = Integer(trace.size()) > Integer(phases.m()) - 1;
  return trace;
}

namespace {

// Exact replay of every numerator through (G, A): the measured bits per numerator,
// or nullopt when some line phase is fractional, outcomes collide or the
// estimate does not come back to x/d.
std::optional<std::vector<std::vector<bool>>> replay(const PhaseSet& phases, std::span<const Integer> gcds,
                                                     std::span<const Integer> adds) {
  if (gcds.size() != adds.size()) return std::nullopt;
  const std::size_t n = gcds.size();
  std::vector<Integer> products(n);
  Integer p = 1;
  for (std::size_t j = 0; j < n; ++j) {
    p *= gcds[j];
    products[j] = p;
  }

  std::vector<std::vector<bool>> outcomes;
  std::set<std::vector<bool>> seen;
  for (const auto& x : phases.numerators) {
    std::vector<bool> bits(n);
    Integer shifted = x;  // x + sum_{k<j} m_k A_k P_k
    Rational estimate = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (shifted % products[j] != 0) return std::nullopt;
      bits[j] = is_odd(shifted / products[j]);
      if (bits[j]) {
        shifted += adds[j] * products[j];
        estimate -= Rational(adds[j] * products[j], phases.denominator);
      }
    }
    if (estimate.mod(2) != phases.phase(x).mod(2)) return std::nullopt;
    if (!seen.insert(bits).second) return std::nullopt;
    outcomes.push_back(std::move(bits));
  }
  return outcomes;
}

}  // namespace

bool trace_distinguishes(const PhaseSet& phases, std::span<const Integer> gcds,
                         std::span<const Integer> adds) {
  return replay(phases, gcds, adds).has_value();
}

ReductionTrace reduce(const PhaseSet& phases) {
  validate(phases);
  ReductionTrace trace;
  if (phases.m() == 1) {
    trace.terminated = true;
    trace.final_set = phases.numerators;
    return trace;
  }

  const std::size_t max_lines = static_cast<std::size_t>(floor_log2(phases.h()) + 1);
  const std::vector<Integer> done{0};
  std::vector<Integer> set = phases.numerators;
  Integer product = 1;
  while (set != done) {
    if (trace.size() == max_lines) return default_ladder(phases);

    ReductionStep step;
    step.set = set;
    step.gcd = gcd_set(set);
    product *= step.gcd;
    step.modulus = stage_modulus(phases.denominator, product);
    bool any_even = false;
    for (const auto& x : set) {
      step.quotients.push_back(x / step.gcd);
      any_even = any_even || !is_odd(step.quotients.back());
    }
    step.phantom = !any_even;
    step.add = mode_difference(step.quotients, step.modulus);

    std::vector<Integer> next;
    for (const auto& y : step.quotients) {
      next.push_back(floor_mod(is_odd(y) ? y + step.add : y, step.modulus));
    }
    set = sorted_unique(std::move(next));
    trace.steps.push_back(std::move(step));
  }
  trace.final_set = set;
  trace.terminated = true;

  const auto outcomes = replay(phases, trace.gcds(), trace.adds());
  if (!outcomes) return default_ladder(phases);
  // An odd stage modulus can flip parities, so an all-odd quotient set does not
  // by itself mean the line always reads 1. Such lines stay measured.
  for (std::size_t j = 0; j < trace.size(); ++j) {
    if (!trace.steps[j].phantom) continue;
    for (const auto& bits : *outcomes) {
      if (!bits[j]) trace.steps[j].phantom = false;
    }
  }
  trace.exceeds_m_minus_1 = Integer(trace.size()) > Integer(phases.m()) - 1;
  return trace;
}

}  // namespace rqpe
