#include "rqpe/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <numeric>
#include <sstream>

#include "rqpe/errors.hpp"
#include "rqpe/phase_math.hpp"
#include "rqpe/random.hpp"

namespace rqpe {
namespace {

constexpr double kPointMassTolerance = 1e-9;

// Position of each iteration index within circuit.lines, or -1.
std::vector<int> positions_by_iteration(const Circuit& circuit) {
  std::size_t size = circuit.num_iterations();
  for (const auto& line : circuit.lines) size = std::max(size, static_cast<std::size_t>(line.index) + 1);
  std::vector<int> pos(size, -1);
  for (std::size_t p = 0; p < circuit.lines.size(); ++p) pos[static_cast<std::size_t>(circuit.lines[p].index)] = static_cast<int>(p);
  return pos;
}

std::vector<std::uint8_t> iteration_bits(const Circuit& circuit, std::size_t outcome) {
  std::vector<std::uint8_t> bits(positions_by_iteration(circuit).size(), 0);
  for (std::size_t p = 0; p < circuit.lines.size(); ++p) {
    bits[static_cast<std::size_t>(circuit.lines[p].index)] = static_cast<std::uint8_t>((outcome >> p) & 1U);
  }
  return bits;
}

Rational constant_phase(const CircuitLine& line, std::span<const std::uint8_t> bits_by_iteration) {
  Rational sum = 0;
  for (const auto& term : line.cz) {
    const auto k = static_cast<std::size_t>(term.control);
    if (k >= bits_by_iteration.size()) throw InputError("control bit missing for line " + std::to_string(line.index));
    if (bits_by_iteration[k]) sum += term.exponent;
  }
  for (const auto& z : line.z) sum += z;
  return sum;
}

void check_statevector_size(std::size_t n) {
  if (n > 12) throw InputError("statevector simulation limited to 12 lines");
}

}  // namespace

double OutcomeDistribution::probability(const Bits& outcome) const {
  if (outcome.size() != num_lines) throw InputError("outcome length does not match the circuit");
  return probabilities.at(outcome_index(outcome));
}

double OutcomeDistribution::total() const {
  return std::accumulate(probabilities.begin(), probabilities.end(), 0.0);
}

std::size_t OutcomeDistribution::most_likely() const {
  return static_cast<std::size_t>(std::max_element(probabilities.begin(), probabilities.end()) - probabilities.begin());
}

std::size_t outcome_index(const Bits& outcome) {
  std::size_t index = 0;
  for (std::size_t i = 0; i < outcome.size(); ++i) {
    if (outcome[i]) index |= std::size_t{1} << i;
  }
  return index;
}

Bits outcome_bits(std::size_t index, std::size_t num_lines) {
  Bits bits(num_lines);
  for (std::size_t i = 0; i < num_lines; ++i) bits[i] = static_cast<std::uint8_t>((index >> i) & 1U);
  return bits;
}

std::string outcome_label(std::size_t index, std::size_t num_lines) {
  return to_string(outcome_bits(index, num_lines));
}

double line_phase(const CircuitLine& line, double theta, std::span<const std::uint8_t> bits_by_iteration) {
  const Rational offset = constant_phase(line, bits_by_iteration).mod(2);
  return line.u.to_double() * theta + std::numbers::pi * offset.to_double();
}

Rational line_phase(const CircuitLine& line, const Rational& theta_over_pi,
                    std::span<const std::uint8_t> bits_by_iteration) {
  return line.u * theta_over_pi + constant_phase(line, bits_by_iteration);
}

LineModel::LineModel(const Circuit& circuit) {
  const auto positions = positions_by_iteration(circuit);
  for (std::size_t p = 0; p < circuit.lines.size(); ++p) {
    const auto& src = circuit.lines[p];
    Line line;
    line.u = src.u.to_double();
    std::vector<Rational> exponents;
    for (const auto& term : src.cz) {
      const auto k = static_cast<std::size_t>(term.control);
      if (k >= positions.size() || positions[k] < 0 || static_cast<std::size_t>(positions[k]) >= p) {
        throw InputError("line " + std::to_string(src.index) + " is controlled by a line that is not measured before it");
      }
      line.control_positions.push_back(static_cast<std::size_t>(positions[k]));
      exponents.push_back(term.exponent);
    }
    if (exponents.size() > 20) throw InputError("too many controls on one line");
    Rational z_sum = 0;
    for (const auto& z : src.z) z_sum += z;
    const std::size_t patterns = std::size_t{1} << exponents.size();
    line.offsets.resize(patterns);
    for (std::size_t mask = 0; mask < patterns; ++mask) {
      Rational sum = z_sum;
      for (std::size_t c = 0; c < exponents.size(); ++c) {
        if ((mask >> c) & 1U) sum += exponents[c];
      }
      line.offsets[mask] = std::numbers::pi * sum.mod(2).to_double();
    }
    lines_.push_back(std::move(line));
  }
}

double LineModel::phase(std::size_t position, double theta, std::size_t prior) const {
  const Line& line = lines_[position];
  std::size_t mask = 0;
  for (std::size_t c = 0; c < line.control_positions.size(); ++c) {
    if ((prior >> line.control_positions[c]) & 1U) mask |= std::size_t{1} << c;
  }
  return line.u * theta + line.offsets[mask];
}

double LineModel::probability(double theta, std::size_t outcome) const {
  double p = 1.0;
  for (std::size_t pos = 0; pos < lines_.size(); ++pos) {
    const double s = std::sin(phase(pos, theta, outcome) / 2.0);
    const double p_one = s * s;
    p *= ((outcome >> pos) & 1U) ? p_one : 1.0 - p_one;
  }
  return p;
}

void LineModel::distribution(double theta, std::span<double> out) const {
  // Breadth-first over lines so each conditional probability is evaluated once
  // per prefix.
  out[0] = 1.0;
  for (std::size_t pos = 0; pos < lines_.size(); ++pos) {
    const std::size_t prefixes = std::size_t{1} << pos;
    for (std::size_t prefix = 0; prefix < prefixes; ++prefix) {
      const double s = std::sin(phase(pos, theta, prefix) / 2.0);
      const double p_one = s * s;
      const double mass = out[prefix];
      out[prefix] = mass * (1.0 - p_one);
      out[prefix | prefixes] = mass * p_one;
    }
  }
}

OutcomeDistribution outcome_distribution(const Circuit& circuit, double theta) {
  const LineModel model(circuit);
  OutcomeDistribution dist{theta, model.num_lines(), std::vector<double>(model.num_outcomes())};
  model.distribution(theta, dist.probabilities);
  return dist;
}

OutcomeDistribution outcome_distribution(const Circuit& circuit, const Rational& theta_over_pi) {
  const std::size_t n = circuit.lines.size();
  if (n > 20) throw InputError("too many lines for a full distribution");
  OutcomeDistribution dist{std::numbers::pi * theta_over_pi.to_double(), n,
                           std::vector<double>(std::size_t{1} << n, 0.0)};
  dist.probabilities[0] = 1.0;
  std::vector<std::uint8_t> bits;
  for (std::size_t pos = 0; pos < n; ++pos) {
    const std::size_t prefixes = std::size_t{1} << pos;
    for (std::size_t prefix = 0; prefix < prefixes; ++prefix) {
      const double mass = dist.probabilities[prefix];
      if (mass == 0.0) {
        dist.probabilities[prefix | prefixes] = 0.0;
        continue;
      }
      bits = iteration_bits(circuit, prefix);
      const double p_one = prob_one(line_phase(circuit.lines[pos], theta_over_pi, bits));
      dist.probabilities[prefix] = mass * (1.0 - p_one);
      dist.probabilities[prefix | prefixes] = mass * p_one;
    }
  }
  return dist;
}

OutcomeDistribution statevector_distribution(const Circuit& circuit, double theta) {
  const std::size_t n = circuit.lines.size();
  check_statevector_size(n);
  const std::size_t dim = std::size_t{1} << n;
  const auto positions = positions_by_iteration(circuit);
  std::vector<std::complex<double>> psi(dim, 0.0);
  psi[0] = 1.0;

  const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
  auto hadamard = [&](std::size_t q) {
    const std::size_t bit = std::size_t{1} << q;
    for (std::size_t i = 0; i < dim; ++i) {
      if (i & bit) continue;
      const auto a = psi[i];
      const auto b = psi[i | bit];
      psi[i] = (a + b) * inv_sqrt2;
      psi[i | bit] = (a - b) * inv_sqrt2;
    }
  };
  auto phase_on = [&](std::size_t mask, std::complex<double> factor) {
    for (std::size_t i = 0; i < dim; ++i) {
      if ((i & mask) == mask) psi[i] *= factor;
    }
  };

  for (std::size_t q = 0; q < n; ++q) hadamard(q);
  // U^u = exp(-i u theta Z / 2) up to a global phase.
  for (std::size_t q = 0; q < n; ++q) {
    const double angle = circuit.lines[q].u.to_double() * theta;
    phase_on(std::size_t{1} << q, {std::cos(angle), std::sin(angle)});
  }
  for (std::size_t q = 0; q < n; ++q) {
    const auto& line = circuit.lines[q];
    for (const auto& term : line.cz) {
      const int control = positions.at(static_cast<std::size_t>(term.control));
      if (control < 0) throw InputError("controlled-Z references a line that is not present");
      phase_on((std::size_t{1} << q) | (std::size_t{1} << control), unit_phase(term.exponent));
    }
    for (const auto& z : line.z) phase_on(std::size_t{1} << q, unit_phase(z));
    hadamard(q);
  }

  OutcomeDistribution dist{theta, n, std::vector<double>(dim)};
  for (std::size_t i = 0; i < dim; ++i) dist.probabilities[i] = std::norm(psi[i]);
  return dist;
}

Bits sample_run(const LineModel& model, double theta, std::uint64_t seed, std::uint64_t run) {
  const CounterRng rng(seed);
  std::size_t outcome = 0;
  for (std::size_t pos = 0; pos < model.num_lines(); ++pos) {
    const double s = std::sin(model.phase(pos, theta, outcome) / 2.0);
    if (rng.uniform(run, pos) < s * s) outcome |= std::size_t{1} << pos;
  }
  return outcome_bits(outcome, model.num_lines());
}

Bits sample_run(const Circuit& circuit, double theta, std::uint64_t seed, std::uint64_t run) {
  return sample_run(LineModel(circuit), theta, seed, run);
}

std::string DistinguishabilityReport::summary() const {
  std::ostringstream out;
  if (ok) {
    out << "perfectly distinguishes " << assignment.size() << " phases";
    return out.str();
  }
  out << failures.size() << " phase(s) not perfectly distinguished:";
  for (const auto& f : failures) out << "\n  x=" << f.numerator << ": " << f.reason;
  return out.str();
}

DistinguishabilityReport verify_perfect_distinguishability(const Circuit& circuit, const PhaseSet& phases) {
  DistinguishabilityReport report;
  std::map<Bits, Integer> owner;
  const std::size_t n = circuit.lines.size();
  for (const auto& x : phases.numerators) {
    const Rational theta = phases.phase(x);
    // Follow the most likely branch; the distribution is a point mass iff that
    // branch carries (almost) all probability.
    std::size_t outcome = 0;
    double mass = 1.0;
    for (std::size_t pos = 0; pos < n; ++pos) {
      const auto bits = iteration_bits(circuit, outcome);
      const double p_one = prob_one(line_phase(circuit.lines[pos], theta, bits));
      if (p_one > 0.5) outcome |= std::size_t{1} << pos;
      mass *= std::max(p_one, 1.0 - p_one);
    }
    const Bits bits = outcome_bits(outcome, n);
    if (mass <= 1.0 - kPointMassTolerance) {
      std::ostringstream reason;
      reason << "no deterministic outcome (largest probability " << mass << ")";
      report.failures.push_back({x, reason.str(), n <= 20 ? outcome_distribution(circuit, theta) : OutcomeDistribution{}});
      continue;
    }
    if (auto [it, inserted] = owner.emplace(bits, x); !inserted) {
      report.failures.push_back({x, "outcome " + to_string(bits) + " already produced by x=" + it->second.str(),
                                 outcome_distribution(circuit, theta)});
      continue;
    }
    report.assignment.emplace_back(x, bits);
  }
  report.ok = report.failures.empty();
  return report;
}

}  // namespace rqpe
