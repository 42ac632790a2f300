#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "rqpe/errors.hpp"
#include "rqpe/metrics.hpp"
#include "support.hpp"

using namespace rqpe;
using namespace rqpe::testing;

namespace {

constexpr double kPi = std::numbers::pi;

// Central-difference CFI written independently of the library, on the statevector.
double reference_cfi(const Circuit& c, double theta) {
  const double h = 1e-5;
  const auto plus = statevector_distribution(c, theta + h);
  const auto minus = statevector_distribution(c, theta - h);
  const auto mid = statevector_distribution(c, theta);
  double sum = 0.0;
  for (std::size_t k = 0; k < mid.probabilities.size(); ++k) {
    const double dp = (plus.probabilities[k] - minus.probabilities[k]) / (2 * h);
    sum += dp * dp / mid.probabilities[k];
  }
  return sum;
}

}  // namespace

TEST(Distance, Examples) {
  const Circuit ri = synthesize(ri_phases(7));
  EXPECT_EQ(distance(ri, 1.3, 1.3), 0.0);
  EXPECT_EQ(distance(ri, Rational(0), frac(1, 7)), 1.0);
  EXPECT_EQ(distance(ri, Rational(0), frac(2, 7)), 0.0);
  EXPECT_NEAR(distance(ri, 0.0, kPi / 7), 1.0, 1e-12);
}

TEST(DistanceGrid, MetricProperties) {
  for (const auto& set : {ri_phases(7), qpe_phases(3), rqpe61_phases()}) {
    const auto grid = distance_grid(synthesize(set), 64);
    for (std::size_t a = 0; a < grid.size(); ++a) {
      EXPECT_EQ(grid(a, a), 0.0);
      for (std::size_t b = 0; b < grid.size(); ++b) {
        EXPECT_EQ(grid(a, b), grid(b, a));
        EXPECT_GE(grid(a, b), 0.0);
        EXPECT_LE(grid(a, b), 1.0);
        for (std::size_t c = 0; c < grid.size(); c += 7) EXPECT_LE(grid(a, b), grid(a, c) + grid(c, b) + 1e-12);
      }
    }
  }
}

TEST(DistanceGrid, LadderPhasesPairwiseDistinguishable) {
  const auto grid = distance_grid(synthesize(qpe_phases(3)), 256);
  // Nodes 32k are the phases k*pi/4.
  for (std::size_t a = 0; a < 256; ++a) {
    for (std::size_t b = 0; b < 256; ++b) {
      if (a % 32 == 0 && b % 32 == 0 && a != b) EXPECT_EQ(grid(a, b), 1.0) << a << "," << b;
    }
  }
  // Only those eight nodes are at distance 1 from all the others.
  std::size_t count = 0;
  for (std::size_t a = 0; a < 256; ++a) {
    bool all = true;
    for (std::size_t b = 0; b < 256; b += 32) {
      if (b != a && grid(a, b) != 1.0) all = false;
    }
    if (all) ++count;
  }
  EXPECT_EQ(count, 8U);
}

TEST(Cfi, ClosedForm) {
  EXPECT_EQ(cfi_closed_form(synthesize(ri_phases(7))), 49.0);
  EXPECT_EQ(cfi_closed_form(synthesize(qpe_phases(3))), 21.0);
  EXPECT_EQ(cfi_closed_form(synthesize(rqpe61_phases())), 37.0);
}

TEST(Cfi, NumericMatchesClosedForm) {
  EXPECT_NEAR(cfi_numeric(synthesize(ri_phases(7)), kPi / 5) / 49.0, 1.0, 1e-4);
  EXPECT_NEAR(cfi_numeric(synthesize(qpe_phases(3)), 0.3) / 21.0, 1.0, 1e-4);
  EXPECT_NEAR(cfi_numeric(synthesize(rqpe61_phases()), 0.4) / 37.0, 1.0, 1e-4);
  const Circuit fig2 = synthesize(fig2_phases());
  EXPECT_NEAR(cfi_numeric(fig2, 0.77) / cfi_closed_form(fig2), 1.0, 1e-4);
  EXPECT_NEAR(reference_cfi(fig2, 0.77) / cfi_closed_form(fig2), 1.0, 1e-4);
}

TEST(Cfi, NumericRejectsDegeneratePoints) {
  EXPECT_THROW(cfi_numeric(synthesize(ri_phases(7)), 0.0), InputError);
  EXPECT_THROW(cfi_numeric(synthesize(ri_phases(7)), 0.3, 0.0), InputError);
  EXPECT_THROW(cfi_numeric(synthesize(ri_phases(7)), 0.3, 1e-2), InputError);
}

TEST(Crb, Values) {
  EXPECT_EQ(crb_variance(1, 1.0), 1.0);
  EXPECT_NEAR(crb_variance(1000, 49.0), 1.0 / 49000.0, 1e-18);
  EXPECT_NEAR(crb_variance(1000, 21.0), 4.7619e-5, 1e-9);
  EXPECT_NEAR(crb_variance(100, 4.0, CrbForm::kSqrtProduct), 0.05, 1e-15);
  EXPECT_THROW(crb_variance(0, 1.0), InputError);
  EXPECT_THROW(crb_variance(1, 0.0), InputError);
}

TEST(RepeatedRange, Values) {
  EXPECT_NEAR(repeated_range(synthesize(ri_phases(7))), 2 * kPi / 7, 1e-15);
  EXPECT_NEAR(repeated_range(synthesize(rqpe61_phases())), 2 * kPi, 1e-15);
  EXPECT_NEAR(repeated_range(synthesize(fig1_phases())), kPi / 8, 1e-15);
}

TEST(ResourceComparison, LadderWins) {
  const auto r = resource_comparison(32.0, frac(1, 4));
  EXPECT_TRUE(r.qpe_better);
  EXPECT_EQ(r.ri_runs, 64);
  EXPECT_EQ(r.qpe_qubits, 6);
  EXPECT_EQ(r.ri_total_unitaries, Rational(256));
}

TEST(ResourceComparison, StrictThreshold) {
  const auto r = resource_comparison(16.0, frac(1, 4));
  EXPECT_FALSE(r.qpe_better);
}

TEST(ResourceComparison, TwoBinWindow) {
  // 1/p = 0.72 h lies inside the window b < 3c/4: repeated single-line runs win.
  const auto inside = resource_comparison(1.0 / (0.72 * 0.5), frac(1, 2));
  EXPECT_EQ(inside.bins_k, 1);
  EXPECT_NEAR(inside.ri_window_edge, 0.75, 1e-15);
  EXPECT_TRUE(inside.ri_beats_rqpe_bound);
  EXPECT_TRUE(inside.ri_beats_rqpe_exact);
  // 1/p = 0.8 h is outside it: direct costs are 2/h against 1.875/h.
  const auto outside = resource_comparison(1.0 / (0.8 * 0.5), frac(1, 2));
  EXPECT_EQ(outside.bins_k, 1);
  EXPECT_FALSE(outside.ri_beats_rqpe_bound);
  EXPECT_FALSE(outside.ri_beats_rqpe_exact);
}

TEST(ResourceComparison, RejectsBadInput) {
  EXPECT_THROW(resource_comparison(0.5, frac(1, 2)), InputError);
  EXPECT_THROW(resource_comparison(4.0, Rational(0)), InputError);
  EXPECT_THROW(resource_comparison(4.0, Rational(3)), InputError);
}
