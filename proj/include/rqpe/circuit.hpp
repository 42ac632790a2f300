#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rqpe/exactmath.hpp"
#include "rqpe/phase_set.hpp"
#include "rqpe/reduction.hpp"

namespace rqpe {

/// Measurement outcomes, one entry (0 or 1) per line.
using Bits = std::vector<std::uint8_t>;

Bits parse_bits(std::string_view text);
std::string to_string(const Bits& bits);

/// Power of a controlled-Z acting on this line: phase exp(i*pi*exponent) when the
/// control line measured 1.
struct ControlTerm {
  int control = 0;
  Rational exponent;
  friend bool operator==(const ControlTerm&, const ControlTerm&) = default;
};

struct CircuitLine {
  int index = 0;  // reduction iteration this line came from
  Rational u;     // power of the encoding unitary
  std::vector<ControlTerm> cz;
  std::vector<Rational> z;  // uncontrolled Z powers left behind by removed phantoms
  bool phantom = false;
  friend bool operator==(const CircuitLine&, const CircuitLine&) = default;
};

struct Circuit {
  Integer d{1};
  std::vector<Integer> gcds;
  std::vector<Integer> adds;
  std::vector<bool> phantom_flags;  // per iteration, survives phantom removal
  std::vector<CircuitLine> lines;   // lines physically present
  std::vector<Rational> bit_values; // per iteration, units of pi
  PhaseSet source_phases;
  bool phantoms_removed = false;
  bool fallback_used = false;

  std::size_t num_lines() const { return lines.size(); }
  std::size_t num_iterations() const { return gcds.size(); }
  std::size_t num_phantoms() const;
  std::vector<Rational> u_vector() const;

  friend bool operator==(const Circuit&, const Circuit&) = default;
};

/// One line per reduction iteration, gate powers exactly as derived from (G, A):
/// u_j = d / (G_0...G_j) and control k contributes A_k / (G_{k+1}...G_j).
Circuit build_circuit(const ReductionTrace& trace, const PhaseSet& phases);

/// Same construction from a bare (d, G, A) triple.
Circuit build_circuit(const Integer& d, std::span<const Integer> gcds, std::span<const Integer> adds,
                      const PhaseSet& phases);

/// Deletes phantom lines; their controlled-Z actions become uncontrolled Z powers.
Circuit remove_phantoms(const Circuit& circuit);

/// b_j = -A_j (G_0...G_j) / d in units of pi, for every iteration.
std::vector<Rational> bit_values(const Circuit& circuit);

/// Sum of the bit values of lines measuring 1, phantoms counted as 1, reduced into
/// [0, 2). `measured` holds either one bit per non-phantom line or one bit per line
/// present in the circuit (phantom positions are then ignored).
Rational estimate_theta(const Circuit& circuit, const Bits& measured);

struct GcdAddPair {
  Integer d;
  std::vector<Integer> gcds;
  std::vector<Integer> adds;
};

/// Reverse construction from bit values (units of pi). Throws InputError when the
/// values do not give odd additions and even GCDs after the first.
GcdAddPair circuit_from_bit_values(std::span<const Rational> bit_values);

/// Runs reduction, builds the circuit and (by default) removes phantoms.
Circuit synthesize(const PhaseSet& phases, bool drop_phantoms = true);

/// Total unitary applications r = sum of u over the lines present.
Rational unitary_count(const Circuit& circuit);

struct ComplexMatrix {
  std::size_t dim = 0;
  std::vector<std::complex<double>> data;  // row-major

  std::complex<double>& operator()(std::size_t row, std::size_t col) { return data[row * dim + col]; }
  const std::complex<double>& operator()(std::size_t row, std::size_t col) const {
    return data[row * dim + col];
  }
};

enum class GateOrdering {
  kSwapped,  // u reversed across qubits (trailing SWAPs, QFT-style convention)
  kCircuit,  // u in circuit order, no SWAPs
};

/// Matrix of the RQPE gate, entry (k, j) = 2^{-n/2} exp[i (b.j)(u'.k)] where
/// b.j sums bit values over the set bits of j and u' is u (kCircuit) or u reversed
/// (kSwapped). Limited to 12 lines.
ComplexMatrix rqpe_gate_matrix(const Circuit& circuit, GateOrdering ordering = GateOrdering::kSwapped);

}  // namespace rqpe
