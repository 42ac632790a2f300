#include "rqpe/circuit.hpp"

#include <algorithm>
#include <cmath>

#include "rqpe/errors.hpp"
#include "rqpe/phase_math.hpp"

namespace rqpe {
namespace {

std::vector<Integer> prefix_products(std::span<const Integer> gcds) {
  std::vector<Integer> out;
  Integer p = 1;
  for (const auto& g : gcds) {
    p *= g;
    out.push_back(p);
  }
  return out;
}

bool is_odd(const Integer& value) { return boost::multiprecision::bit_test(boost::multiprecision::abs(value), 0); }

}  // namespace

Bits parse_bits(std::string_view text) {
  Bits bits;
  for (char c : text) {
    if (c != '0' && c != '1') throw InputError("bitstring must contain only 0 and 1: '" + std::string(text) + "'");
    bits.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  return bits;
}

std::string to_string(const Bits& bits) {
  std::string out;
  for (auto b : bits) out.push_back(b ? '1' : '0');
  return out;
}

std::size_t Circuit::num_phantoms() const {
  return static_cast<std::size_t>(std::count(phantom_flags.begin(), phantom_flags.end(), true));
}

std::vector<Rational> Circuit::u_vector() const {
  std::vector<Rational> out;
  for (const auto& line : lines) out.push_back(line.u);
  return out;
}

Circuit build_circuit(const Integer& d, std::span<const Integer> gcds, std::span<const Integer> adds,
                      const PhaseSet& phases) {
  if (gcds.size() != adds.size()) throw InputError("gcds and adds must have equal length");
  if (d < 1) throw InputError("denominator must be positive");
  for (const auto& g : gcds) {
    if (g < 1) throw InputError("gcds must be positive");
  }
  const auto products = prefix_products(gcds);

  Circuit circuit;
  circuit.d = d;
  circuit.gcds.assign(gcds.begin(), gcds.end());
  circuit.adds.assign(adds.begin(), adds.end());
  circuit.source_phases = phases;
  for (std::size_t j = 0; j < gcds.size(); ++j) {
    CircuitLine line;
    line.index = static_cast<int>(j);
    line.u = Rational(d, products[j]);
    for (std::size_t k = 0; k < j; ++k) {
      line.cz.push_back({static_cast<int>(k), Rational(adds[k] * products[k], products[j])});
    }
    circuit.lines.push_back(std::move(line));
    circuit.phantom_flags.push_back(false);
  }
  circuit.bit_values = bit_values(circuit);
  return circuit;
}

Circuit build_circuit(const ReductionTrace& trace, const PhaseSet& phases) {
  if (!trace.terminated) throw InputError("build_circuit needs a terminated trace");
  const auto gcds = trace.gcds();
  const auto adds = trace.adds();
  Circuit circuit = build_circuit(phases.denominator, gcds, adds, phases);
  circuit.fallback_used = trace.fallback_used;
  for (std::size_t j = 0; j < trace.size(); ++j) {
    circuit.phantom_flags[j] = trace.steps[j].phantom;
    circuit.lines[j].phantom = trace.steps[j].phantom;
  }
  return circuit;
}

Circuit remove_phantoms(const Circuit& circuit) {
  Circuit out = circuit;
  out.phantoms_removed = true;
  out.lines.clear();
  for (const auto& line : circuit.lines) {
    if (line.phantom) continue;
    CircuitLine kept = line;
    kept.cz.clear();
    for (const auto& term : line.cz) {
      if (circuit.phantom_flags.at(static_cast<std::size_t>(term.control))) {
        kept.z.push_back(term.exponent);
      } else {
        kept.cz.push_back(term);
      }
    }
    out.lines.push_back(std::move(kept));
  }
  return out;
}

std::vector<Rational> bit_values(const Circuit& circuit) {
  const auto products = prefix_products(circuit.gcds);
  std::vector<Rational> out;
  for (std::size_t j = 0; j < circuit.gcds.size(); ++j) {
    out.push_back(-Rational(circuit.adds[j] * products[j], circuit.d));
  }
  return out;
}

Rational estimate_theta(const Circuit& circuit, const Bits& measured) {
  const std::size_t iterations = circuit.num_iterations();
  const std::size_t non_phantom = iterations - circuit.num_phantoms();
  std::vector<std::uint8_t> by_iteration(iterations, 0);
  if (measured.size() == non_phantom) {
    std::size_t next = 0;
    for (std::size_t j = 0; j < iterations; ++j) {
      by_iteration[j] = circuit.phantom_flags[j] ? 1 : measured[next++];
    }
  } else if (measured.size() == circuit.lines.size()) {
    for (std::size_t pos = 0; pos < circuit.lines.size(); ++pos) {
      by_iteration[static_cast<std::size_t>(circuit.lines[pos].index)] = measured[pos];
    }
    for (std::size_t j = 0; j < iterations; ++j) {
      if (circuit.phantom_flags[j]) by_iteration[j] = 1;
    }
  } else {
    throw InputError("bitstring length " + std::to_string(measured.size()) + " does not match the " +
                     std::to_string(non_phantom) + " measured lines");
  }

  const auto values = bit_values(circuit);
  Rational sum = 0;
  for (std::size_t j = 0; j < iterations; ++j) {
    if (by_iteration[j] > 1) throw InputError("bits must be 0 or 1");
    if (by_iteration[j]) sum += values[j];
  }
  return sum.mod(2);
}

GcdAddPair circuit_from_bit_values(std::span<const Rational> values) {
  if (values.empty()) throw InputError("no bit values given");
  GcdAddPair out;
  out.d = 1;
  for (const auto& b : values) out.d = lcm(out.d, b.denominator());

  std::vector<Integer> numerators;
  for (const auto& b : values) {
    const Rational scaled = b * Rational(out.d);
    numerators.push_back(boost::multiprecision::abs(scaled.numerator()));
  }
  Integer product = 1;
  for (std::size_t i = 0; i < numerators.size(); ++i) {
    std::vector<Integer> remaining;
    for (std::size_t j = i; j < numerators.size(); ++j) remaining.push_back(numerators[j] / product);
    const Integer g = gcd_set(remaining);
    product *= g;
    // Bit values are -A_i P_i / d, so the sign of b_i carries through to A_i.
    const Rational scaled = values[i] * Rational(out.d);
    const Integer add = -scaled.numerator() / product;
    out.gcds.push_back(g);
    out.adds.push_back(add);
  }
  for (std::size_t i = 0; i < out.adds.size(); ++i) {
    if (!is_odd(out.adds[i]) || (i > 0 && is_odd(out.gcds[i]))) {
      throw InputError("bit values not realizable by this construction");
    }
  }
  return out;
}

Circuit synthesize(const PhaseSet& phases, bool drop_phantoms) {
  const ReductionTrace trace = reduce(phases);
  Circuit circuit = build_circuit(trace, phases);
  return drop_phantoms ? remove_phantoms(circuit) : circuit;
}

Rational unitary_count(const Circuit& circuit) {
  Rational r = 0;
  for (const auto& line : circuit.lines) r += line.u;
  return r;
}

ComplexMatrix rqpe_gate_matrix(const Circuit& circuit, GateOrdering ordering) {
  const std::size_t n = circuit.lines.size();
  if (n > 12) throw InputError("matrix too large");
  const std::size_t dim = std::size_t{1} << n;

  std::vector<Rational> b, u;
  for (const auto& line : circuit.lines) {
    b.push_back(circuit.bit_values.at(static_cast<std::size_t>(line.index)));
    u.push_back(line.u);
  }
  if (ordering == GateOrdering::kSwapped) std::reverse(u.begin(), u.end());

  auto bit_sum = [n](const std::vector<Rational>& weights, std::size_t mask) {
    Rational s = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if ((mask >> i) & 1U) s += weights[i];
    }
    return s;
  };
  std::vector<Rational> b_dot(dim), u_dot(dim);
  for (std::size_t mask = 0; mask < dim; ++mask) {
    b_dot[mask] = bit_sum(b, mask);
    u_dot[mask] = bit_sum(u, mask);
  }

  ComplexMatrix m{dim, std::vector<std::complex<double>>(dim * dim)};
  const double norm = 1.0 / std::sqrt(static_cast<double>(dim));
  for (std::size_t k = 0; k < dim; ++k) {
    for (std::size_t j = 0; j < dim; ++j) {
      m(k, j) = norm * unit_phase(b_dot[j] * u_dot[k]);
    }
  }
  return m;
}

}  // namespace rqpe
