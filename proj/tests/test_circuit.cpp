#include <gtest/gtest.h>

#include <complex>
#include <numbers>
#include <random>

#include "rqpe/circuit.hpp"
#include "rqpe/errors.hpp"
#include "rqpe/simulator.hpp"
#include "support.hpp"

using namespace rqpe;
using namespace rqpe::testing;

namespace {

Circuit retained(const PhaseSet& phases) { return synthesize(phases, false); }

double max_unitarity_error(const ComplexMatrix& m) {
  double worst = 0.0;
  for (std::size_t a = 0; a < m.dim; ++a) {
    for (std::size_t b = 0; b < m.dim; ++b) {
      std::complex<double> dot = 0.0;
      for (std::size_t k = 0; k < m.dim; ++k) dot += std::conj(m(k, a)) * m(k, b);
      worst = std::max(worst, std::abs(dot - (a == b ? 1.0 : 0.0)));
    }
  }
  return worst;
}

std::size_t reverse_bits(std::size_t value, std::size_t n) {
  std::size_t out = 0;
  for (std::size_t i = 0; i < n; ++i) out |= ((value >> i) & 1U) << (n - 1 - i);
  return out;
}

}  // namespace

TEST(BuildCircuit, FourLineExampleExponents) {
  const Circuit c = retained(fig1_phases());
  ASSERT_EQ(c.num_lines(), 4U);
  EXPECT_EQ(c.u_vector(), (std::vector<Rational>{64, 32, 16, 1}));
  EXPECT_EQ(c.lines[1].cz, (std::vector<ControlTerm>{{0, frac(43, 2)}}));
  EXPECT_EQ(c.lines[2].cz, (std::vector<ControlTerm>{{0, frac(43, 4)}, {1, frac(21, 2)}}));
  EXPECT_EQ(c.lines[3].cz, (std::vector<ControlTerm>{{0, frac(43, 64)}, {1, frac(21, 32)}, {2, frac(-11, 16)}}));
  EXPECT_TRUE(c.lines[3].phantom);
  EXPECT_FALSE(c.phantoms_removed);
}

TEST(BuildCircuit, LadderAndSingleLine) {
  const Circuit qpe = retained(qpe_phases(3));
  EXPECT_EQ(qpe.u_vector(), (std::vector<Rational>{4, 2, 1}));
  EXPECT_EQ(qpe.lines[1].cz, (std::vector<ControlTerm>{{0, frac(-1, 2)}}));
  EXPECT_EQ(qpe.lines[2].cz, (std::vector<ControlTerm>{{0, frac(-1, 4)}, {1, frac(-1, 2)}}));

  const Circuit ri = retained(ri_phases(7));
  ASSERT_EQ(ri.num_lines(), 1U);
  EXPECT_EQ(ri.lines[0].u, Rational(7));
  EXPECT_TRUE(ri.lines[0].cz.empty());
}

TEST(BuildCircuit, StructuralInvariants) {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 100; ++trial) {
    const PhaseSet set = random_phase_set(rng, 300, 12);
    const auto trace = reduce(set);
    const Circuit c = build_circuit(trace, set);
    Integer product = 1;
    for (std::size_t j = 0; j < c.num_lines(); ++j) {
      product *= c.gcds[j];
      EXPECT_EQ(c.lines[j].u, Rational(c.d, product));
      if (j > 0) EXPECT_LT(c.lines[j].u, c.lines[j - 1].u);
      for (const auto& term : c.lines[j].cz) EXPECT_LT(term.control, static_cast<int>(j));
    }
  }
}

TEST(RemovePhantoms, SeventyDenominatorExample) {
  const Circuit full = retained(fig2_phases());
  const Circuit c = remove_phantoms(full);
  ASSERT_EQ(c.num_lines(), 3U);
  EXPECT_TRUE(c.phantoms_removed);
  EXPECT_EQ(c.lines[2].index, 3);
  EXPECT_EQ(c.lines[2].z, (std::vector<Rational>{frac(-1, 2)}));
  EXPECT_EQ(c.lines[2].cz.size(), 2U);
  EXPECT_EQ(c.num_lines(), c.num_iterations() - c.num_phantoms());
  EXPECT_EQ(c.bit_values, full.bit_values);
}

TEST(RemovePhantoms, TrailingPhantomAndIdentity) {
  const Circuit c = remove_phantoms(retained(fig1_phases()));
  EXPECT_EQ(c.num_lines(), 3U);
  for (const auto& line : c.lines) EXPECT_TRUE(line.z.empty());

  const Circuit qpe = retained(qpe_phases(3));
  EXPECT_EQ(remove_phantoms(qpe).lines, qpe.lines);
}

TEST(BitValues, Examples) {
  EXPECT_EQ(retained(fig1_phases()).bit_values,
            (std::vector<Rational>{frac(-43, 64), frac(-42, 64), frac(44, 64), 1}));
  EXPECT_EQ(retained(qpe_phases(3)).bit_values, (std::vector<Rational>{frac(1, 4), frac(1, 2), 1}));
  EXPECT_EQ(retained(ri_phases(7)).bit_values, (std::vector<Rational>{frac(1, 7)}));
}

TEST(EstimateTheta, Examples) {
  const Circuit c = synthesize(fig1_phases());
  EXPECT_EQ(estimate_theta(c, parse_bits("100")), frac(21, 64));
  EXPECT_EQ(estimate_theta(c, parse_bits("110")), frac(107, 64));
  EXPECT_THROW(estimate_theta(c, parse_bits("10")), InputError);
  EXPECT_EQ(estimate_theta(synthesize(qpe_phases(3)), parse_bits("000")), Rational(0));
  // Full-length strings ignore what sits in the phantom slot.
  const Circuit kept = retained(fig1_phases());
  EXPECT_EQ(estimate_theta(kept, parse_bits("1000")), frac(21, 64));
  EXPECT_EQ(estimate_theta(kept, parse_bits("1001")), frac(21, 64));
}

TEST(EstimateTheta, RecoversEveryGeneratingPhase) {
  std::mt19937_64 rng(99);
  std::vector<PhaseSet> sets{fig1_phases(), fig2_phases(), qpe_phases(4), rqpe61_phases()};
  for (int i = 0; i < 60; ++i) sets.push_back(random_phase_set(rng, 256, 10));
  for (const auto& set : sets) {
    const Circuit c = synthesize(set);
    const auto report = verify_perfect_distinguishability(c, set);
    ASSERT_TRUE(report.ok) << report.summary();
    for (const auto& [x, bits] : report.assignment) EXPECT_EQ(estimate_theta(c, bits), set.phase(x).mod(2));
  }
}

TEST(CircuitFromBitValues, WorkedExample) {
  for (long long d : {70LL, 64LL, 100LL}) {
    const std::vector<Rational> values{frac(3, d), frac(6, d), frac(12, d)};
    const auto pair = circuit_from_bit_values(values);
    EXPECT_EQ(pair.gcds, ints({3, 2, 2}));
    EXPECT_EQ(pair.adds, ints({-1, -1, -1}));
  }
}

TEST(CircuitFromBitValues, RejectsParityViolations) {
  EXPECT_THROW(circuit_from_bit_values(std::vector<Rational>{frac(2, 6), frac(3, 6)}), InputError);
  EXPECT_THROW(circuit_from_bit_values(std::vector<Rational>{frac(1, 5), frac(3, 5)}), InputError);
  EXPECT_THROW(circuit_from_bit_values(std::vector<Rational>{}), InputError);
}

TEST(CircuitFromBitValues, InvertsLadders) {
  for (int n = 1; n <= 6; ++n) {
    const Circuit qpe = retained(qpe_phases(n));
    const auto pair = circuit_from_bit_values(qpe.bit_values);
    EXPECT_EQ(pair.gcds, qpe.gcds);
    EXPECT_EQ(pair.adds, qpe.adds);
    const Circuit ladder = build_circuit(default_ladder(fig1_phases()), fig1_phases());
    const auto again = circuit_from_bit_values(ladder.bit_values);
    EXPECT_EQ(again.gcds, ladder.gcds);
    EXPECT_EQ(again.adds, ladder.adds);
  }
}

TEST(UnitaryCount, Examples) {
  EXPECT_EQ(unitary_count(synthesize(qpe_phases(3))), Rational(7));
  EXPECT_EQ(unitary_count(synthesize(ri_phases(7))), Rational(7));
  EXPECT_EQ(unitary_count(synthesize(fig2_phases())), frac(70, 3) + frac(70, 6) + frac(70, 72));
}

TEST(UnitaryCount, LadderBelowTwiceDenominator) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 100; ++trial) {
    const PhaseSet set = random_phase_set(rng, 512, 16);
    const Circuit c = build_circuit(default_ladder(set), set);
    EXPECT_LT(unitary_count(c), Rational(2 * set.denominator));
  }
}

TEST(GateMatrix, SingleLineIsHadamard) {
  const Circuit c = build_circuit(Integer(1), ints({1}), ints({-1}), phases_over({0, 1}, 1));
  ASSERT_EQ(c.bit_values, (std::vector<Rational>{1}));
  const double s = 1.0 / std::sqrt(2.0);
  for (auto ordering : {GateOrdering::kSwapped, GateOrdering::kCircuit}) {
    const auto m = rqpe_gate_matrix(c, ordering);
    EXPECT_EQ(m(0, 0), std::complex<double>(s, 0));
    EXPECT_EQ(m(0, 1), std::complex<double>(s, 0));
    EXPECT_EQ(m(1, 0), std::complex<double>(s, 0));
    EXPECT_EQ(m(1, 1), std::complex<double>(-s, 0));
  }
}

TEST(GateMatrix, TwoLineLadderIsFourierMatrix) {
  const Circuit c = synthesize(qpe_phases(2));
  const auto swapped = rqpe_gate_matrix(c, GateOrdering::kSwapped);
  const auto plain = rqpe_gate_matrix(c, GateOrdering::kCircuit);
  for (std::size_t k = 0; k < 4; ++k) {
    for (std::size_t j = 0; j < 4; ++j) {
      const std::complex<double> dft =
          0.5 * std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(j * k) / 4.0);
      EXPECT_LT(std::abs(swapped(k, j) - dft), 1e-15);
      EXPECT_LT(std::abs(plain(reverse_bits(k, 2), j) - dft), 1e-15);
    }
  }
}

TEST(GateMatrix, UnitaryForGeneratedCircuits) {
  std::vector<Circuit> circuits{retained(fig1_phases()), retained(fig2_phases()), synthesize(fig1_phases()),
                                synthesize(qpe_phases(5)), synthesize(rqpe61_phases())};
  for (const auto& c : circuits) {
    EXPECT_LT(max_unitarity_error(rqpe_gate_matrix(c, GateOrdering::kSwapped)), 1e-10);
    EXPECT_LT(max_unitarity_error(rqpe_gate_matrix(c, GateOrdering::kCircuit)), 1e-10);
  }
}

TEST(GateMatrix, SizeGuard) {
  std::vector<Integer> gcds(13, Integer(2)), adds(13, Integer(-1));
  gcds[0] = 1;
  const Circuit big = build_circuit(Integer(4096), gcds, adds, phases_over({0, 1}, 4096));
  EXPECT_THROW(rqpe_gate_matrix(big), InputError);
}
