#include <gtest/gtest.h>

#include <cmath>

#include "renyimono/convexroof.hpp"
#include "renyimono/errors.hpp"
#include "renyimono/rng.hpp"
#include "renyimono/states.hpp"

using namespace renyimono;

namespace {

DensityMatrix separable_mixture() {
  std::vector<double> d{0.5, 0, 0, 0.5};
  return DensityMatrix(2, ComplexMatrix::diagonal(std::span<const double>(d)));
}

double ensemble_average(const RoofResult& r, const RoofMeasure& m) {
  double s = 0;
  for (const auto& e : r.ensemble) s += e.weight * roof_pure_measure(e.state, m);
  return s;
}

}  // namespace

TEST(RoofPureMeasure, MatchesClosedForms) {
  EXPECT_NEAR(roof_pure_measure(bell_phi_plus(), RoofMeasure::concurrence()), 1.0, 1e-14);
  EXPECT_NEAR(roof_pure_measure(basis_state(2, 2), RoofMeasure::concurrence()), 0.0, 1e-14);
  const PureState psi = haar_random_pure(2, 4);
  const double c = 2 * std::abs(psi[0] * psi[3] - psi[1] * psi[2]);
  EXPECT_NEAR(roof_pure_measure(psi, RoofMeasure::renyi(AlphaParam(2))), g_alpha(c, AlphaParam(2)), 1e-12);
}

TEST(RoofUpperBound, PureInputIsExact) {
  const PureState psi = haar_random_pure(2, 9);
  const RoofResult r = roof_upper_bound({psi.density(), RoofMeasure::concurrence(), {}});
  EXPECT_EQ(r.rank, 1u);
  ASSERT_EQ(r.ensemble.size(), 1u);
  EXPECT_NEAR(r.value, roof_pure_measure(psi, RoofMeasure::concurrence()), 1e-12);
}

TEST(RoofUpperBound, SeparableMixtureFindsProductDecomposition) {
  const RoofResult r = roof_upper_bound({separable_mixture(), RoofMeasure::concurrence(), {}});
  EXPECT_NEAR(r.value, 0.0, 1e-6);
}

TEST(RoofUpperBound, WernerConcurrence) {
  const RoofResult r = roof_upper_bound({werner(0.8), RoofMeasure::concurrence(), {}});
  EXPECT_GE(r.value, 0.7 - 1e-6);
  EXPECT_LE(r.value, 0.7 + 5e-3);
}

TEST(RoofUpperBound, EnsembleReproducesState) {
  const DensityMatrix rho = random_density(2, 3, 21);
  RoofSchedule s;
  s.restarts = 3;
  s.iterations = 100;
  const RoofResult r = roof_upper_bound({rho, RoofMeasure::concurrence(), s});
  EXPECT_EQ(r.rank, 3u);
  EXPECT_EQ(r.ensemble_size, 6u);
  ComplexMatrix sum = ComplexMatrix::zeros(4);
  double w = 0;
  for (const auto& e : r.ensemble) {
    sum = sum + Complex(e.weight) * e.state.density().matrix();
    w += e.weight;
  }
  EXPECT_NEAR(w, 1.0, 1e-12);
  EXPECT_LT(max_abs_diff(sum, rho.matrix()), 1e-12);
  EXPECT_NEAR(ensemble_average(r, RoofMeasure::concurrence()), r.value, 1e-12);
}

TEST(RoofUpperBound, DeterministicAcrossWorkerCounts) {
  const DensityMatrix rho = random_density(2, 2, 8);
  RoofSchedule s;
  s.restarts = 4;
  s.iterations = 80;
  s.seed = 77;
  const double one = roof_upper_bound({rho, RoofMeasure::concurrence(), s}).value;
  s.workers = 3;
  EXPECT_EQ(roof_upper_bound({rho, RoofMeasure::concurrence(), s}).value, one);
}

TEST(RoofUpperBound, TraceIsMonotone) {
  RoofSchedule s;
  s.restarts = 2;
  s.iterations = 60;
  s.record_trace = true;
  const RoofResult r = roof_upper_bound({random_density(2, 4, 2), RoofMeasure::concurrence(), s});
  ASSERT_EQ(r.traces.size(), 2u);
  for (const auto& t : r.traces) {
    ASSERT_EQ(t.size(), 61u);  // starting value, then one entry per iteration
    for (std::size_t i = 1; i < t.size(); ++i) EXPECT_LE(t[i], t[i - 1]);
  }
}

TEST(RoofUpperBound, ScheduleValidation) {
  const DensityMatrix rho = random_density(2, 2, 1);
  RoofSchedule s;
  s.ensemble_size = 1;
  EXPECT_THROW(roof_upper_bound({rho, RoofMeasure::concurrence(), s}), DomainError);
  s.ensemble_size = 9;
  EXPECT_THROW(roof_upper_bound({rho, RoofMeasure::concurrence(), s}), DomainError);
  s = {};
  s.decay = 1.0;
  EXPECT_THROW(roof_upper_bound({rho, RoofMeasure::concurrence(), s}), DomainError);
  s = {};
  s.restarts = 0;
  EXPECT_THROW(roof_upper_bound({rho, RoofMeasure::concurrence(), s}), DomainError);
}

TEST(RoofGap, PureInputIsZero) {
  EXPECT_NEAR(roof_gap(haar_random_pure(2, 5).density(), AlphaParam(2), {}), 0.0, 1e-9);
}

TEST(RoofGap, WernerRenyi) {
  const double gap = roof_gap(werner(0.8), AlphaParam(2), {});
  EXPECT_GE(gap, -1e-6);
  EXPECT_LE(gap, 5e-3);
}

TEST(RoofGap, RandomRankTwo) {
  RoofSchedule s;
  for (std::uint64_t k = 0; k < 20; ++k) {
    s.seed = k;
    const double gap = roof_gap(random_density(2, 2, derive_seed(3, k)), AlphaParam(2), s);
    EXPECT_GE(gap, -1e-6) << k;
    EXPECT_LE(gap, 5e-3) << k;
  }
}

TEST(RoofGap, RegimeGate) {
  EXPECT_THROW(roof_gap(werner(0.8), AlphaParam(0.7), {}), RegimeError);
}
