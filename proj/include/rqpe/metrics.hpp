#pragma once

#include <cstdint>
#include <vector>

#include "rqpe/circuit.hpp"
#include "rqpe/simulator.hpp"

namespace rqpe {

/// sqrt(1/2 * sum_k [P(M_k|theta_a) - P(M_k|theta_b)]^2), always in [0, 1].
double distance(const OutcomeDistribution& a, const OutcomeDistribution& b);
double distance(const Circuit& circuit, double theta_a, double theta_b);
/// Exact-phase variant; arguments in units of pi.
double distance(const Circuit& circuit, const Rational& theta_a_over_pi, const Rational& theta_b_over_pi);

struct DistanceGrid {
  std::vector<double> thetas;  // radians, theta_k = 2*pi*k/N
  std::vector<double> values;  // row-major N x N

  std::size_t size() const { return thetas.size(); }
  double operator()(std::size_t a, std::size_t b) const { return values[a * thetas.size() + b]; }
};

/// Pairwise distances on the grid theta_k = 2*pi*k/N. Grid phases are exact
/// rationals (2k/N in units of pi), so phases landing on nodes give exact 0/1.
DistanceGrid distance_grid(const Circuit& circuit, std::size_t grid_points);

/// Conditional-probability table on the same exact grid (row k = theta_k).
std::vector<OutcomeDistribution> probability_map(const Circuit& circuit, std::size_t grid_points);

/// sum_j u_j^2 over the lines present.
double cfi_closed_form(const Circuit& circuit);

/// sum_k (dP_k/dtheta)^2 / P_k with central differences of width `step`.
/// Throws InputError("choose generic theta") if some P_k < 1e-6.
double cfi_numeric(const Circuit& circuit, double theta, double step = 1e-6);

enum class CrbForm {
  kVariance,       // 1 / (R * I)
  kSqrtProduct,   // 1 / (sqrt(R) * sqrt(I))
};

double crb_variance(std::int64_t runs, double cfi, CrbForm form = CrbForm::kVariance);

/// 2*pi / min_j u_j over the lines present.
double repeated_range(const Circuit& circuit);

struct ResourceReport {
  double precision = 0.0;  // p, target uncertainty 1/p
  Rational range;          // h, largest phase in units of pi
  Integer ri_runs;         // ceil((p h)^2)
  Rational ri_total_unitaries;  // ri_runs / h
  double qpe_unitaries_bound = 0.0;  // 4p
  Integer qpe_unitaries;             // 2^qubits - 1 of the concrete ladder
  int qpe_qubits = 0;                // ceil(log2 p) + 1
  bool qpe_better = false;           // 4/p < h

  // RQPE construction splitting [0, h] into between k and k+1 bins.
  Integer bins_k;
  double rqpe_unitaries = 0.0;       // p (2 - 2^-e), e = ceil(log2(k + 2)) - 1
  double ri_window_edge = 0.0;       // (2 - 2^-e) / (k^2 + 1): RI wins by the bound iff b/c below it
  bool ri_beats_rqpe_bound = false;  // b/c < window edge (k >= 1)
  bool ri_beats_rqpe_exact = false;  // ceil((c/b)^2)/h < rqpe_unitaries
};

ResourceReport resource_comparison(double precision, const Rational& range);

}  // namespace rqpe
