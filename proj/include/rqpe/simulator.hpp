#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rqpe/circuit.hpp"

namespace rqpe {

/// P(M_k | theta) over every outcome of the lines present in a circuit. Bit i of the
/// index k is the outcome of line position i; labels print m_0 leftmost.
struct OutcomeDistribution {
  double theta = 0.0;
  std::size_t num_lines = 0;
  std::vector<double> probabilities;

  double probability(const Bits& outcome) const;
  double total() const;
  std::size_t most_likely() const;
};

std::size_t outcome_index(const Bits& outcome);
Bits outcome_bits(std::size_t index, std::size_t num_lines);
std::string outcome_label(std::size_t index, std::size_t num_lines);

/// Phase (radians) seen by `line` before its closing Hadamard:
/// u*theta + pi*(sum of active controlled powers + sum of z powers).
/// `bits_by_iteration[k]` is the outcome of reduction iteration k.
double line_phase(const CircuitLine& line, double theta, std::span<const std::uint8_t> bits_by_iteration);

/// Exact version, theta and result in units of pi.
Rational line_phase(const CircuitLine& line, const Rational& theta_over_pi,
                    std::span<const std::uint8_t> bits_by_iteration);

/// Per-line sequential model compiled for repeated double-precision evaluation.
/// The theta-independent part of every line phase is summed exactly for each
/// pattern of control bits and converted to radians once.
class LineModel {
 public:
  explicit LineModel(const Circuit& circuit);

  std::size_t num_lines() const { return lines_.size(); }
  std::size_t num_outcomes() const { return std::size_t{1} << lines_.size(); }

  /// Phase of line `position` given the outcomes of earlier positions (bits of `prior`).
  double phase(std::size_t position, double theta, std::size_t prior) const;

  /// P(outcome | theta) for one outcome index.
  double probability(double theta, std::size_t outcome) const;

  /// Fills `out` (size num_outcomes()) with the joint distribution.
  void distribution(double theta, std::span<double> out) const;

 private:
  struct Line {
    double u = 0.0;
    std::vector<std::size_t> control_positions;
    std::vector<double> offsets;  // radians, indexed by control-bit pattern
  };
  std::vector<Line> lines_;
};

OutcomeDistribution outcome_distribution(const Circuit& circuit, double theta);

/// Exact-phase distribution for theta = pi * theta_over_pi; lines whose phase is an
/// integer multiple of pi give probabilities of exactly 0 or 1.
OutcomeDistribution outcome_distribution(const Circuit& circuit, const Rational& theta_over_pi);

/// Full statevector simulation (H, U^u, controlled-Z network, H on every line),
/// independent of the sequential model. At most 12 lines.
OutcomeDistribution statevector_distribution(const Circuit& circuit, double theta);

/// One run of the circuit, each line sampled in order from its conditional
/// probability. Draws come from CounterRng(seed) at (run, line position).
Bits sample_run(const Circuit& circuit, double theta, std::uint64_t seed, std::uint64_t run = 0);
Bits sample_run(const LineModel& model, double theta, std::uint64_t seed, std::uint64_t run = 0);

struct DistinguishabilityFailure {
  Integer numerator;
  std::string reason;
  OutcomeDistribution distribution;
};

struct DistinguishabilityReport {
  bool ok = false;
  std::vector<std::pair<Integer, Bits>> assignment;  // numerator -> deterministic outcome
  std::vector<DistinguishabilityFailure> failures;

  std::string summary() const;
};

/// Checks that every phase of `phases` yields a point mass (max probability
/// > 1 - 1e-9) and that the resulting outcomes are pairwise distinct.
DistinguishabilityReport verify_perfect_distinguishability(const Circuit& circuit, const PhaseSet& phases);

}  // namespace rqpe
