#include "rqpe/bayes.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "rqpe/errors.hpp"

namespace rqpe {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void normalize(std::vector<double>& weights) {
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  if (!(total > 0.0)) throw InputError("posterior vanished: outcome impossible on the whole grid");
  for (auto& w : weights) w /= total;
}

void record(PosteriorGrid& posterior, double unitaries_per_run) {
  posterior.trace.push_back({unitaries_per_run * static_cast<double>(posterior.runs_completed),
                             posterior.variance(), posterior.map_theta()});
}

}  // namespace

bool PriorSupport::full_circle() const { return hi - lo >= kTwoPi - 1e-12; }

PriorSupport PriorSupport::circle() { return {0.0, kTwoPi}; }

double PosteriorGrid::mean() const {
  double m = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) m += weights[i] * grid[i];
  return m;
}

double PosteriorGrid::variance() const {
  const double m = mean();
  double v = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) v += weights[i] * (grid[i] - m) * (grid[i] - m);
  return v;
}

double PosteriorGrid::map_theta() const {
  return grid[static_cast<std::size_t>(std::max_element(weights.begin(), weights.end()) - weights.begin())];
}

PosteriorGrid flat_prior(const PriorSupport& support, std::size_t points) {
  if (points < 2) throw InputError("posterior grid needs at least 2 points");
  if (!(support.hi > support.lo)) throw InputError("prior support must have hi > lo");
  PosteriorGrid posterior;
  posterior.support = support;
  posterior.grid.resize(points);
  const bool circle = support.full_circle();
  const double span = circle ? kTwoPi : support.hi - support.lo;
  const double denom = circle ? static_cast<double>(points) : static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) {
    posterior.grid[i] = support.lo + span * static_cast<double>(i) / denom;
  }
  if (!circle) posterior.grid.back() = support.hi;
  posterior.weights.assign(points, 1.0 / static_cast<double>(points));
  return posterior;
}

LikelihoodTable likelihood_table(const Circuit& circuit, const std::vector<double>& grid) {
  const LineModel model(circuit);
  LikelihoodTable table{model.num_outcomes(), grid.size(), std::vector<double>(model.num_outcomes() * grid.size())};
  std::vector<double> dist(model.num_outcomes());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    model.distribution(grid[i], dist);
    for (std::size_t k = 0; k < dist.size(); ++k) table.values[k * grid.size() + i] = dist[k];
  }
  return table;
}

void posterior_update(PosteriorGrid& posterior, const LikelihoodTable& table, std::size_t outcome) {
  if (outcome >= table.outcomes || table.points != posterior.weights.size()) {
    throw InputError("likelihood table does not match the posterior");
  }
  const double* likelihood = table.row(outcome);
  for (std::size_t i = 0; i < posterior.weights.size(); ++i) posterior.weights[i] *= likelihood[i];
  normalize(posterior.weights);
  ++posterior.runs_completed;
}

PosteriorGrid posterior_update(PosteriorGrid posterior, const Circuit& circuit, const Bits& outcome) {
  if (outcome.size() != circuit.lines.size()) throw InputError("outcome length does not match the circuit");
  const LineModel model(circuit);
  const std::size_t index = outcome_index(outcome);
  for (std::size_t i = 0; i < posterior.weights.size(); ++i) {
    posterior.weights[i] *= model.probability(posterior.grid[i], index);
  }
  normalize(posterior.weights);
  ++posterior.runs_completed;
  return posterior;
}

PosteriorGrid run_experiment(const Circuit& circuit, double theta_true, std::int64_t runs,
                             const PriorSupport& support, std::size_t grid_points, std::uint64_t seed) {
  if (grid_points < 100) throw InputError("experiment grid needs at least 100 points");
  if (support.lo < 0.0 || support.hi > kTwoPi + 1e-12) throw InputError("prior support must lie in [0, 2pi)");
  if (runs < 0) throw InputError("runs must be non-negative");
  PosteriorGrid posterior = flat_prior(support, grid_points);
  const LikelihoodTable table = likelihood_table(circuit, posterior.grid);
  const LineModel model(circuit);
  const double r = unitary_count(circuit).to_double();
  for (std::int64_t run = 0; run < runs; ++run) {
    const Bits outcome = sample_run(model, theta_true, seed, static_cast<std::uint64_t>(run));
    posterior_update(posterior, table, outcome_index(outcome));
    record(posterior, r);
  }
  return posterior;
}

double loglog_slope(const PosteriorGrid& posterior, std::int64_t r_min, std::int64_t r_max) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < posterior.trace.size(); ++i) {
    const auto runs = static_cast<std::int64_t>(i) + 1;
    if (runs < r_min || runs > r_max) continue;
    const double x = std::log(static_cast<double>(runs));
    const double y = std::log(posterior.trace[i].variance);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++count;
  }
  if (count < 2) throw InputError("not enough trace points for a slope");
  const double n = static_cast<double>(count);
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

std::vector<Peak> find_peaks(const PosteriorGrid& posterior, double min_relative_height) {
  const auto& w = posterior.weights;
  const std::size_t n = w.size();
  const bool circle = posterior.support.full_circle();
  auto neighbour = [&](std::size_t i, int dir) -> std::ptrdiff_t {
    const auto j = static_cast<std::ptrdiff_t>(i) + dir;
    if (j < 0) return circle ? static_cast<std::ptrdiff_t>(n) - 1 : -1;
    if (j >= static_cast<std::ptrdiff_t>(n)) return circle ? 0 : -1;
    return j;
  };

  // Hill-climb every node to its local maximum; plateaus climb left.
  std::vector<std::size_t> top(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t at = i;
    for (;;) {
      const auto left = neighbour(at, -1);
      const auto right = neighbour(at, +1);
      std::size_t next = at;
      if (right >= 0 && w[static_cast<std::size_t>(right)] > w[next]) next = static_cast<std::size_t>(right);
      if (left >= 0 && w[static_cast<std::size_t>(left)] > w[next]) next = static_cast<std::size_t>(left);
      if (next == at) break;
      at = next;
    }
    top[i] = at;
  }

  const double global = *std::max_element(w.begin(), w.end());
  std::vector<Peak> peaks;
  for (std::size_t i = 0; i < n; ++i) {
    if (top[i] != i || w[i] < min_relative_height * global) continue;
    Peak peak;
    peak.index = i;
    peak.theta = posterior.grid[i];
    peak.height = w[i];
    // Basin statistics, measured relative to the peak so wrap-around basins stay contiguous.
    double m1 = 0.0, m2 = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (top[j] != i) continue;
      double offset = posterior.grid[j] - peak.theta;
      if (circle) offset = std::remainder(offset, kTwoPi);
      peak.mass += w[j];
      m1 += w[j] * offset;
      m2 += w[j] * offset * offset;
    }
    const double mean_offset = m1 / peak.mass;
    peak.mean = peak.theta + mean_offset;
    peak.variance = m2 / peak.mass - mean_offset * mean_offset;
    peaks.push_back(peak);
  }
  return peaks;
}

}  // namespace rqpe
