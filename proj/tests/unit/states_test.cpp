#include <gtest/gtest.h>

#include <array>
#include <cmath>

#include "renyimono/errors.hpp"
#include "renyimono/measures.hpp"
#include "renyimono/rng.hpp"
#include "renyimono/states.hpp"

using namespace renyimono;

namespace {
double norm2(const PureState& psi) {
  double n = 0;
  for (const auto& z : psi.amplitudes()) n += std::norm(z);
  return n;
}
}  // namespace

TEST(Rng, SplitmixKnownValues) {
  // Reference outputs of splitmix64 for state 0 (first output) and 1.
  EXPECT_EQ(splitmix64(0), 0xE220A8397B1DCDAFULL);
  EXPECT_NE(derive_seed(1, 0), derive_seed(1, 1));
  EXPECT_NE(derive_seed(0, 1), derive_seed(1, 0));
}

TEST(Rng, SameSeedSameStream) {
  Rng a(42), b(42), c(43);
  for (int i = 0; i < 100; ++i) {
    const auto x = a.next_u64();
    EXPECT_EQ(x, b.next_u64());
    EXPECT_NE(x, c.next_u64());
  }
}

TEST(Rng, UniformRange) {
  Rng r(5);
  for (int i = 0; i < 10000; ++i) {
    const double u = r.uniform();
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
    EXPECT_GT(r.uniform_open0(), 0.0);
  }
}

TEST(Ghz, TwoQubits) {
  const PureState g = ghz(2);
  const double h = 1 / std::sqrt(2.0);
  EXPECT_NEAR(g[0].real(), h, 1e-15);
  EXPECT_EQ(g[1], Complex(0));
  EXPECT_EQ(g[2], Complex(0));
  EXPECT_NEAR(g[3].real(), h, 1e-15);
}

TEST(WState, ThreeQubits) {
  const PureState w = w_state(3);
  const double t = 1 / std::sqrt(3.0);
  for (std::size_t i = 0; i < 8; ++i) {
    const bool one_hot = i == 1 || i == 2 || i == 4;
    EXPECT_NEAR(w[i].real(), one_hot ? t : 0.0, 1e-15) << i;
  }
  EXPECT_THROW(w_state(2), DomainError);
}

TEST(GeneralizedW, ProductCase) {
  const PureState p = generalized_w(1, 0, 0);
  EXPECT_EQ(p[4], Complex(1));  // |100>
  const std::array<std::size_t, 2> ab{0, 1}, ac{0, 2};
  EXPECT_NEAR(concurrence_two_qubit(reduced_density(p, ab)), 0.0, 1e-12);
  EXPECT_NEAR(concurrence_two_qubit(reduced_density(p, ac)), 0.0, 1e-12);
  EXPECT_THROW(generalized_w(1, 1, 0), DomainError);
}

TEST(HaarRandomPure, Normalized) {
  for (std::uint64_t s = 0; s < 200; ++s) {
    EXPECT_NEAR(norm2(haar_random_pure(1 + s % 5, s)), 1.0, 1e-12);
  }
}

TEST(HaarRandomPure, Deterministic) {
  const PureState a = haar_random_pure(4, 99), b = haar_random_pure(4, 99), c = haar_random_pure(4, 100);
  for (std::size_t i = 0; i < a.dim(); ++i) EXPECT_EQ(a[i], b[i]);
  EXPECT_NE(a[0], c[0]);
}

TEST(HaarRandomPure, MeanMarginalPurity) {
  // E tr(rho_A^2) = (dA + dB) / (dA dB + 1) = 4/5 for two qubits.
  const std::array<std::size_t, 1> keep{0};
  double sum = 0;
  const int n = 100000;
  for (int s = 0; s < n; ++s) sum += reduced_density(haar_random_pure(2, s), keep).purity();
  EXPECT_NEAR(sum / n, 0.8, 0.003);
}

TEST(RandomDensity, RankOneIsPure) {
  EXPECT_NEAR(random_density(2, 1, 3).purity(), 1.0, 1e-10);
}

TEST(RandomDensity, FullRankTrace) {
  const auto ev = hermitian_eigenvalues(random_density(2, 4, 11).matrix());
  double s = 0;
  for (double v : ev) {
    s += v;
    EXPECT_GT(v, 0.0);
  }
  EXPECT_NEAR(s, 1.0, 1e-12);
}

TEST(RandomDensity, Deterministic) {
  EXPECT_EQ(random_density(2, 3, 5).matrix(), random_density(2, 3, 5).matrix());
  EXPECT_THROW(random_density(2, 5, 0), DomainError);
  EXPECT_THROW(random_density(2, 0, 0), DomainError);
}

TEST(Werner, Endpoints) {
  EXPECT_LT(max_abs_diff(werner(0).matrix(), 0.25 * ComplexMatrix::identity(4)), 1e-15);
  EXPECT_LT(max_abs_diff(werner(1).matrix(), singlet().density().matrix()), 1e-15);
  EXPECT_THROW(werner(1.1), DomainError);
}

TEST(Werner, ConcurrenceAtPointEight) {
  EXPECT_NEAR(concurrence_two_qubit(werner(0.8)), 0.7, 1e-10);
}

TEST(StateFamily, SamplePureRules) {
  const StateFamily haar{family::HaarPure{}, 3};
  const PureState a = sample_pure(haar, 7, 2);
  const PureState b = haar_random_pure(3, derive_seed(7, 2));
  for (std::size_t i = 0; i < a.dim(); ++i) EXPECT_EQ(a[i], b[i]);
  EXPECT_TRUE(is_random_family(haar));
  EXPECT_FALSE(is_random_family(StateFamily{family::W{}, 3}));
  EXPECT_FALSE(is_pure_family(StateFamily{family::Werner{0.5}, 2}));
  EXPECT_THROW(sample_pure(StateFamily{family::Werner{0.5}, 2}, 0, 0), DomainError);
}
