#pragma once

#include <cstdint>
#include <vector>

#include "rqpe/circuit.hpp"
#include "rqpe/simulator.hpp"

namespace rqpe {

/// Prior support [lo, hi]. A support spanning a full 2*pi is treated as the
/// circle [lo, lo + 2*pi) and its grid omits the endpoint.
struct PriorSupport {
  double lo = 0.0;
  double hi = 0.0;

  bool full_circle() const;
  static PriorSupport circle();
};

struct TracePoint {
  double unitaries = 0.0;  // r * R
  double variance = 0.0;
  double map_theta = 0.0;
};

struct PosteriorGrid {
  PriorSupport support;
  std::vector<double> grid;
  std::vector<double> weights;
  std::int64_t runs_completed = 0;
  std::vector<TracePoint> trace;

  double mean() const;
  double variance() const;
  double map_theta() const;
};

/// Flat prior on `points` grid nodes spanning `support` exactly.
PosteriorGrid flat_prior(const PriorSupport& support, std::size_t points);

/// P(outcome | theta_i) for every outcome (rows) and grid node (columns).
struct LikelihoodTable {
  std::size_t outcomes = 0;
  std::size_t points = 0;
  std::vector<double> values;  // row-major outcomes x points

  const double* row(std::size_t outcome) const { return values.data() + outcome * points; }
};

LikelihoodTable likelihood_table(const Circuit& circuit, const std::vector<double>& grid);

/// Multiplies the weights by P(outcome | theta_i) and renormalizes. Throws
/// InputError when the outcome is impossible at every grid node.
PosteriorGrid posterior_update(PosteriorGrid posterior, const Circuit& circuit, const Bits& outcome);
void posterior_update(PosteriorGrid& posterior, const LikelihoodTable& table, std::size_t outcome);

/// Samples `runs` outcomes at theta_true (CounterRng keyed by seed, one counter
/// per run) and folds each into a flat prior, recording (r*R, variance, MAP).
PosteriorGrid run_experiment(const Circuit& circuit, double theta_true, std::int64_t runs,
                             const PriorSupport& support, std::size_t grid_points, std::uint64_t seed);

/// Least-squares slope of log(variance) against log(R) over R in [r_min, r_max].
double loglog_slope(const PosteriorGrid& posterior, std::int64_t r_min, std::int64_t r_max);

struct Peak {
  std::size_t index = 0;
  double theta = 0.0;
  double height = 0.0;    // weight at the local maximum
  double mass = 0.0;      // total weight of its basin
  double mean = 0.0;
  double variance = 0.0;  // within-basin variance
};

/// Local maxima of the weights at least `min_relative_height` times the global
/// maximum, each with the basin of grid nodes that climb to it. Wraps around on a
/// full-circle support.
std::vector<Peak> find_peaks(const PosteriorGrid& posterior, double min_relative_height = 0.05);

}  // namespace rqpe
