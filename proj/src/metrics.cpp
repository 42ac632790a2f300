#include "rqpe/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "rqpe/errors.hpp"

namespace rqpe {

double distance(const OutcomeDistribution& a, const OutcomeDistribution& b) {
  if (a.probabilities.size() != b.probabilities.size()) throw InputError("distributions over different outcome spaces");
  double sum = 0.0;
  for (std::size_t k = 0; k < a.probabilities.size(); ++k) {
    const double diff = a.probabilities[k] - b.probabilities[k];
    sum += diff * diff;
  }
  return std::min(1.0, std::sqrt(0.5 * sum));
}

double distance(const Circuit& circuit, double theta_a, double theta_b) {
  return distance(outcome_distribution(circuit, theta_a), outcome_distribution(circuit, theta_b));
}

double distance(const Circuit& circuit, const Rational& theta_a_over_pi, const Rational& theta_b_over_pi) {
  return distance(outcome_distribution(circuit, theta_a_over_pi), outcome_distribution(circuit, theta_b_over_pi));
}

std::vector<OutcomeDistribution> probability_map(const Circuit& circuit, std::size_t grid_points) {
  if (grid_points < 2) throw InputError("grid needs at least 2 points");
  std::vector<OutcomeDistribution> rows;
  rows.reserve(grid_points);
  for (std::size_t k = 0; k < grid_points; ++k) {
    rows.push_back(outcome_distribution(circuit, Rational(Integer(2 * k), Integer(grid_points))));
  }
  return rows;
}

DistanceGrid distance_grid(const Circuit& circuit, std::size_t grid_points) {
  const auto rows = probability_map(circuit, grid_points);
  DistanceGrid grid;
  for (const auto& row : rows) grid.thetas.push_back(row.theta);
  grid.values.assign(grid_points * grid_points, 0.0);
  for (std::size_t a = 0; a < grid_points; ++a) {
    for (std::size_t b = a + 1; b < grid_points; ++b) {
      const double d = distance(rows[a], rows[b]);
      grid.values[a * grid_points + b] = d;
      grid.values[b * grid_points + a] = d;
    }
  }
  return grid;
}

double cfi_closed_form(const Circuit& circuit) {
  double sum = 0.0;
  for (const auto& line : circuit.lines) {
    const double u = line.u.to_double();
    sum += u * u;
  }
  return sum;
}

double cfi_numeric(const Circuit& circuit, double theta, double step) {
  if (!(step > 0.0) || step > 1e-3) throw InputError("step must lie in (0, 1e-3]");
  const LineModel model(circuit);
  std::vector<double> centre(model.num_outcomes()), plus(model.num_outcomes()), minus(model.num_outcomes());
  model.distribution(theta, centre);
  model.distribution(theta + step, plus);
  model.distribution(theta - step, minus);
  double info = 0.0;
  for (std::size_t k = 0; k < centre.size(); ++k) {
    if (centre[k] < 1e-6) throw InputError("choose generic theta");
    const double derivative = (plus[k] - minus[k]) / (2.0 * step);
    info += derivative * derivative / centre[k];
  }
  return info;
}

double crb_variance(std::int64_t runs, double cfi, CrbForm form) {
  if (runs < 1) throw InputError("runs must be >= 1");
  if (!(cfi > 0.0)) throw InputError("Fisher information must be positive");
  const double r = static_cast<double>(runs);
  return form == CrbForm::kVariance ? 1.0 / (r * cfi) : 1.0 / (std::sqrt(r) * std::sqrt(cfi));
}

double repeated_range(const Circuit& circuit) {
  if (circuit.lines.empty()) throw InputError("circuit has no lines");
  Rational smallest = circuit.lines.front().u;
  for (const auto& line : circuit.lines) smallest = std::min(smallest, line.u);
  return 2.0 * std::numbers::pi / smallest.to_double();
}

ResourceReport resource_comparison(double precision, const Rational& range) {
  if (!(precision >= 1.0) || !std::isfinite(precision)) throw InputError("precision p must be >= 1");
  if (range <= Rational(0) || range > Rational(2)) throw InputError("range h must lie in (0, 2]");
  ResourceReport report;
  report.precision = precision;
  report.range = range;
  const double h = range.to_double();

  const double ph = precision * h;
  report.ri_runs = Integer(static_cast<long long>(std::ceil(ph * ph)));
  report.ri_total_unitaries = Rational(report.ri_runs) / range;

  report.qpe_qubits = static_cast<int>(std::ceil(std::log2(precision))) + 1;
  report.qpe_unitaries_bound = 4.0 * precision;
  report.qpe_unitaries = (Integer(1) << report.qpe_qubits) - 1;
  report.qpe_better = 4.0 / precision < h;

  // 1/p = (b/c) h with c/(k+1) < b < c/k, i.e. c/b = p h.
  const double c_over_b = ph;
  const auto k = static_cast<long long>(std::floor(c_over_b));
  report.bins_k = Integer(k);
  if (k >= 1) {
    const int e = ceil_log2(Integer(k + 2)) - 1;
    const double ladder = 2.0 - std::ldexp(1.0, -e);
    report.rqpe_unitaries = precision * ladder;
    report.ri_window_edge = ladder / static_cast<double>(k * k + 1);
    report.ri_beats_rqpe_bound = 1.0 / c_over_b < report.ri_window_edge;
    report.ri_beats_rqpe_exact = std::ceil(c_over_b * c_over_b) / h < report.rqpe_unitaries;
  } else {
    // Fewer than one bin: the construction is RI itself.
    report.rqpe_unitaries = 1.0 / h;
  }
  return report;
}

}  // namespace rqpe
