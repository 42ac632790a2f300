#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "rqpe/errors.hpp"
#include "rqpe/simulator.hpp"
#include "support.hpp"

using namespace rqpe;
using namespace rqpe::testing;

namespace {

constexpr double kPi = std::numbers::pi;

double total_variation(const OutcomeDistribution& a, const OutcomeDistribution& b) {
  double sum = 0.0;
  for (std::size_t k = 0; k < a.probabilities.size(); ++k) sum += std::abs(a.probabilities[k] - b.probabilities[k]);
  return 0.5 * sum;
}

Circuit single_line(long long u) {
  return build_circuit(Integer(u), ints({1}), ints({-1}), phases_over({0, 1}, u));
}

}  // namespace

TEST(LinePhase, Examples) {
  const Circuit ri = single_line(7);
  const std::vector<std::uint8_t> none;
  EXPECT_DOUBLE_EQ(line_phase(ri.lines[0], 0.0, none), 0.0);
  EXPECT_NEAR(line_phase(ri.lines[0], kPi / 7, none), kPi, 1e-12);
  EXPECT_EQ(line_phase(ri.lines[0], frac(1, 7), none), Rational(1));

  const Circuit fig1 = synthesize(fig1_phases(), false);
  const std::vector<std::uint8_t> prior{1};
  EXPECT_EQ(line_phase(fig1.lines[1], frac(21, 64), prior), Rational(32));
  // The double version may fold the constant part into [0, 2pi).
  EXPECT_NEAR(std::remainder(line_phase(fig1.lines[1], 21 * kPi / 64, prior), 2 * kPi), 0.0, 1e-9);
}

TEST(OutcomeDistribution, PointMasses) {
  const Circuit fig1 = synthesize(fig1_phases());
  const auto dist = outcome_distribution(fig1, frac(21, 64));
  EXPECT_EQ(dist.probability(parse_bits("100")), 1.0);
  EXPECT_NEAR(outcome_distribution(fig1, 21 * kPi / 64).probability(parse_bits("100")), 1.0, 1e-12);

  const Circuit kept = synthesize(fig1_phases(), false);
  EXPECT_EQ(outcome_distribution(kept, frac(21, 64)).probability(parse_bits("1001")), 1.0);

  const Circuit qpe = synthesize(qpe_phases(3));
  const auto q = outcome_distribution(qpe, frac(3, 4));
  EXPECT_EQ(q.probability(parse_bits("110")), 1.0);
  EXPECT_EQ(estimate_theta(qpe, parse_bits("110")), frac(3, 4));
  EXPECT_EQ(outcome_label(q.most_likely(), 3), "110");
}

TEST(OutcomeDistribution, Normalized) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> theta(0.0, 2 * kPi);
  for (const auto& set : {fig1_phases(), fig2_phases(), qpe_phases(4), rqpe61_phases()}) {
    for (bool keep : {false, true}) {
      const Circuit c = synthesize(set, !keep);
      for (int i = 0; i < 50; ++i) EXPECT_NEAR(outcome_distribution(c, theta(rng)).total(), 1.0, 1e-12);
    }
  }
}

TEST(Statevector, AgreesWithSequentialModel) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> theta(0.0, 2 * kPi);
  for (const auto& set : {fig1_phases(), fig2_phases()}) {
    for (bool keep : {false, true}) {
      const Circuit c = synthesize(set, !keep);
      for (int i = 0; i < 100; ++i) {
        const double t = theta(rng);
        EXPECT_LT(total_variation(outcome_distribution(c, t), statevector_distribution(c, t)), 1e-12);
      }
    }
  }
}

TEST(Statevector, TrivialCases) {
  EXPECT_NEAR(statevector_distribution(single_line(1), kPi).probability(parse_bits("1")), 1.0, 1e-15);
  EXPECT_NEAR(statevector_distribution(synthesize(qpe_phases(3)), 0.0).probability(parse_bits("000")), 1.0, 1e-15);
  std::vector<Integer> gcds(13, Integer(2)), adds(13, Integer(-1));
  gcds[0] = 1;
  const Circuit big = build_circuit(Integer(4096), gcds, adds, phases_over({0, 1}, 4096));
  EXPECT_THROW(statevector_distribution(big, 0.1), InputError);
}

TEST(RepeatedRange, DistributionsArePeriodic) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> theta(0.0, 2 * kPi);
  for (const auto& set : {ri_phases(7), qpe_phases(3), fig1_phases(), rqpe61_phases()}) {
    const Circuit c = synthesize(set);
    const double period = 2 * kPi / c.lines.back().u.to_double();
    for (int i = 0; i < 50; ++i) {
      const double t = theta(rng);
      const auto a = outcome_distribution(c, t);
      const auto b = outcome_distribution(c, t + period);
      for (std::size_t k = 0; k < a.probabilities.size(); ++k) {
        EXPECT_NEAR(a.probabilities[k], b.probabilities[k], 1e-12);
      }
    }
  }
}

TEST(SampleRun, DeterministicOnGeneratingPhases) {
  const Circuit c = synthesize(fig1_phases());
  for (std::uint64_t seed : {1ULL, 42ULL, 987654321ULL}) {
    for (std::uint64_t run = 0; run < 20; ++run) {
      EXPECT_EQ(to_string(sample_run(c, 21 * kPi / 64, seed, run)), "100");
    }
  }
}

TEST(SampleRun, FairCoinFrequency) {
  const Circuit ri = single_line(7);
  const LineModel model(ri);
  std::size_t ones = 0;
  constexpr std::size_t kRuns = 100000;
  for (std::size_t run = 0; run < kRuns; ++run) ones += sample_run(model, kPi / 14, 42, run)[0];
  EXPECT_NEAR(static_cast<double>(ones) / kRuns, 0.5, 0.005);
}

TEST(SampleRun, ReproducibleAndOrderIndependent) {
  const Circuit c = synthesize(fig2_phases());
  std::vector<std::string> forward, backward(50);
  for (std::uint64_t run = 0; run < 50; ++run) forward.push_back(to_string(sample_run(c, 1.234, 9, run)));
  for (std::uint64_t run = 50; run-- > 0;) backward[run] = to_string(sample_run(c, 1.234, 9, run));
  EXPECT_EQ(forward, backward);
}

TEST(SampleRun, MatchesDistributionFrequencies) {
  const Circuit c = synthesize(qpe_phases(2));
  const double theta = 0.9;
  const auto dist = outcome_distribution(c, theta);
  std::vector<double> counts(dist.probabilities.size(), 0.0);
  constexpr std::size_t kRuns = 200000;
  const LineModel model(c);
  for (std::size_t run = 0; run < kRuns; ++run) counts[outcome_index(sample_run(model, theta, 5, run))] += 1.0;
  for (std::size_t k = 0; k < counts.size(); ++k) {
    const double p = dist.probabilities[k];
    EXPECT_NEAR(counts[k] / kRuns, p, 5 * std::sqrt(p * (1 - p) / kRuns) + 1e-9);
  }
}

TEST(Verify, Examples) {
  const Circuit fig1 = synthesize(fig1_phases());
  const auto ok = verify_perfect_distinguishability(fig1, fig1_phases());
  EXPECT_TRUE(ok.ok);
  EXPECT_EQ(ok.assignment.size(), 6U);

  const Circuit u1 = single_line(1);
  const auto bad = verify_perfect_distinguishability(u1, phases_over({0, 1}, 3));
  EXPECT_FALSE(bad.ok);
  ASSERT_EQ(bad.failures.size(), 1U);
  EXPECT_EQ(bad.failures[0].numerator, 1);
  EXPECT_NEAR(bad.failures[0].distribution.probability(parse_bits("1")), 0.25, 1e-12);

  const Circuit u3 = synthesize(phases_over({0, 1}, 3));
  EXPECT_EQ(u3.lines[0].u, Rational(3));
  EXPECT_TRUE(verify_perfect_distinguishability(u3, phases_over({0, 1}, 3)).ok);
}

TEST(Verify, DetectsCollidingOutcomes) {
  // u = 2 sends 0 and pi to the same outcome.
  const Circuit u2 = single_line(2);
  EXPECT_FALSE(verify_perfect_distinguishability(u2, phases_over({0, 1}, 1)).ok);
}
