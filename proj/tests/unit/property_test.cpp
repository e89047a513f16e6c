// Randomized invariants. Cases come from fixed substreams (see
// generators.hpp); the case index is printed on failure.

#include <gtest/gtest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

#include "generators.hpp"
#include "renyimono/convexroof.hpp"
#include "renyimono/monogamy.hpp"
#include "renyimono/states.hpp"

using namespace renyimono;
using renyimono::testkit::case_rng;
using renyimono::testkit::draw;

namespace {

std::vector<std::size_t> random_subset(std::size_t n, Rng& rng) {
  std::vector<std::size_t> all(n);
  std::iota(all.begin(), all.end(), 0);
  for (std::size_t i = n; i > 1; --i) std::swap(all[i - 1], all[rng.next_u64() % i]);
  all.resize(1 + rng.next_u64() % (n - 1));
  return all;
}

PureState apply(const ComplexMatrix& u, const PureState& psi) {
  std::vector<Complex> out(psi.dim());
  for (std::size_t i = 0; i < psi.dim(); ++i)
    for (std::size_t j = 0; j < psi.dim(); ++j) out[i] += u(i, j) * psi[j];
  return PureState::normalized(psi.num_qubits(), std::move(out));
}

}  // namespace

TEST(LinalgProperty, PartialTracePreservesTraceAndHermiticity) {
  for (std::uint64_t i = 0; i < 300; ++i) {
    auto rng = case_rng(10, i);
    const std::size_t n = 2 + rng.next_u64() % 3;
    const DensityMatrix rho = random_density(n, 1 + rng.next_u64() % (1u << n), rng.next_u64());
    const auto keep = random_subset(n, rng);
    const DensityMatrix m = partial_trace(rho, keep);
    EXPECT_NEAR(m.matrix().trace().real(), 1.0, 1e-12) << i;
    EXPECT_NEAR(m.matrix().trace().imag(), 0.0, 1e-12) << i;
    EXPECT_LE(m.matrix().hermiticity_defect(), 1e-12) << i;
  }
}

TEST(LinalgProperty, TwoStepPartialTraceEqualsOneStep) {
  for (std::uint64_t i = 0; i < 200; ++i) {
    auto rng = case_rng(11, i);
    const std::size_t n = 3 + rng.next_u64() % 2;
    const DensityMatrix rho = random_density(n, 1 + rng.next_u64() % 4, rng.next_u64());
    // keep a sorted subset, then a sorted sub-subset of it
    auto outer = random_subset(n, rng);
    if (outer.size() < 2) outer.push_back((outer[0] + 1) % n);
    std::sort(outer.begin(), outer.end());
    auto inner_pos = random_subset(outer.size(), rng);
    std::sort(inner_pos.begin(), inner_pos.end());
    std::vector<std::size_t> inner;
    for (auto p : inner_pos) inner.push_back(outer[p]);
    const DensityMatrix two = partial_trace(partial_trace(rho, outer), inner_pos);
    const DensityMatrix one = partial_trace(rho, inner);
    EXPECT_LT(max_abs_diff(two.matrix(), one.matrix()), 1e-12) << i;
  }
}

TEST(LinalgProperty, DensitySpectrumSumsToOne) {
  for (std::uint64_t i = 0; i < 200; ++i) {
    auto rng = case_rng(12, i);
    const std::size_t n = 1 + rng.next_u64() % 4;
    const auto ev = hermitian_eigenvalues(random_density(n, 1 + rng.next_u64() % (1u << n), i).matrix());
    EXPECT_NEAR(std::accumulate(ev.begin(), ev.end(), 0.0), 1.0, 1e-10) << i;
  }
}

TEST(LinalgProperty, KronTraceIsMultiplicative) {
  for (std::uint64_t i = 0; i < 200; ++i) {
    auto rng = case_rng(13, i);
    const auto a = testkit::random_hermitian(1 + rng.next_u64() % 4, rng);
    const auto b = testkit::random_hermitian(1 + rng.next_u64() % 4, rng);
    EXPECT_LT(std::abs(kron(a, b).trace() - a.trace() * b.trace()), 1e-12 * (1 + std::abs(a.trace() * b.trace()))) << i;
  }
}

TEST(LinalgProperty, JacobiReconstruction) {
  for (std::uint64_t i = 0; i < 100; ++i) {
    auto rng = case_rng(14, i);
    const std::size_t dim = 1 + rng.next_u64() % 16;
    const auto h = testkit::random_hermitian(dim, rng);
    const auto d = hermitian_eig(h);
    const auto lambda = ComplexMatrix::diagonal(std::span<const double>(d.values));
    EXPECT_LT((d.vectors * lambda * d.vectors.adjoint() - h).frobenius_norm(), 1e-10 * (1 + h.frobenius_norm())) << i;
  }
}

TEST(StatesProperty, ConstructorsPassInvariants) {
  for (std::uint64_t i = 0; i < 200; ++i) {
    auto rng = case_rng(20, i);
    const std::size_t n = 1 + rng.next_u64() % 6;
    const PureState psi = haar_random_pure(n, i);
    EXPECT_NO_THROW(PureState(n, std::vector<Complex>(psi.amplitudes().begin(), psi.amplitudes().end())));
    const DensityMatrix rho = random_density(n, 1 + rng.next_u64() % (1u << n), i);
    EXPECT_NO_THROW(DensityMatrix(n, rho.matrix()));
  }
  for (double p = 0; p <= 1.0; p += 0.05) EXPECT_NO_THROW(DensityMatrix(2, werner(p).matrix()));
}

TEST(StatesProperty, HaarBasisCovariance) {
  // The marginal purity histogram of U|psi> matches that of |psi>.
  auto rng = case_rng(21, 0);
  const ComplexMatrix u = testkit::random_unitary(8, rng);
  constexpr int kSamples = 20000;
  constexpr int kBins = 10;
  std::array<int, kBins> plain{}, rotated{};
  const std::array<std::size_t, 1> keep{0};
  auto bin = [](double purity) { return std::min(kBins - 1, static_cast<int>((purity - 0.5) * 2 * kBins)); };
  for (int s = 0; s < kSamples; ++s) {
    const PureState psi = haar_random_pure(3, derive_seed(21, s));
    ++plain[bin(reduced_density(psi, keep).purity())];
    ++rotated[bin(reduced_density(apply(u, psi), keep).purity())];
  }
  for (int b = 0; b < kBins; ++b) {
    // Two independent-ish binomial counts; 5 sigma of their difference.
    const double p = (plain[b] + rotated[b]) / (2.0 * kSamples);
    const double sigma = std::sqrt(2 * kSamples * p * (1 - p));
    EXPECT_LE(std::abs(plain[b] - rotated[b]), 5 * sigma + 1) << "bin " << b;
  }
}

TEST(MeasuresProperty, GAlphaMonotoneAndConvex) {
  for (std::uint64_t i = 0; i < 40; ++i) {
    auto rng = case_rng(30, i);
    const AlphaParam a(i % 2 ? draw(rng, kAnalyticAlphaThreshold, 0.999) : draw(rng, 1.001, 6));
    const double h = 1e-3;
    double prev2 = g_alpha(0, a), prev1 = g_alpha(h, a);
    for (int k = 2; k <= 1000; ++k) {
      const double cur = g_alpha(k * h, a);
      EXPECT_GE(cur, prev1 - 1e-12) << a.value() << ' ' << k;
      EXPECT_GE(cur - 2 * prev1 + prev2, -1e-9) << a.value() << ' ' << k;
      prev2 = prev1;
      prev1 = cur;
    }
  }
}

TEST(MeasuresProperty, DualPathConsistency) {
  for (std::uint64_t i = 0; i < 1000; ++i) {
    auto rng = case_rng(31, i);
    const std::size_t n = 2 + rng.next_u64() % 4;
    const PureState psi = haar_random_pure(n, rng.next_u64());
    const std::array<std::size_t, 1> side{rng.next_u64() % n};
    for (double alpha : {0.9, 1.5, 2.0, 3.0}) {
      const AlphaParam a(alpha);
      EXPECT_NEAR(renyi_entanglement_pure(psi, side, a), g_alpha(concurrence_pure(psi, side), a), 1e-9) << i;
    }
  }
}

TEST(MeasuresProperty, BinomialChainOrdering) {
  for (double mu : {1.0, 1.5, 2.0, 3.0, 4.0}) {
    for (int k = 0; k <= 1000; ++k) {
      const auto t = lemma1_terms(k * 1e-3, mu);
      EXPECT_GE(t.lhs - t.mid, -1e-12) << mu << ' ' << k;
      EXPECT_GE(t.mid - t.weak, -1e-12) << mu << ' ' << k;
    }
  }
}

TEST(MeasuresProperty, CkwOnHaarStates) {
  for (std::uint64_t i = 0; i < 2000; ++i) {
    const PureState psi = haar_random_pure(3 + i % 2, derive_seed(32, i));
    const ChainMeasurements m = measure_chain(ChainState(psi));
    double sum = 0;
    for (double c : m.c_pair) sum += c * c;
    EXPECT_GE(m.c_global * m.c_global - sum, -1e-9) << i;
  }
}

TEST(RoofProperty, ReconstructionAndMonotoneTrace) {
  for (std::uint64_t i = 0; i < 10; ++i) {
    auto rng = case_rng(40, i);
    const DensityMatrix rho = random_density(2, 1 + rng.next_u64() % 4, rng.next_u64());
    RoofSchedule s;
    s.restarts = 2;
    s.iterations = 80;
    s.seed = i;
    s.record_trace = true;
    const RoofResult r = roof_upper_bound({rho, RoofMeasure::renyi(AlphaParam(2)), s});
    ComplexMatrix sum = ComplexMatrix::zeros(4);
    for (const auto& e : r.ensemble) sum = sum + Complex(e.weight) * e.state.density().matrix();
    EXPECT_LT(max_abs_diff(sum, rho.matrix()), 1e-9) << i;
    for (const auto& t : r.traces)
      for (std::size_t k = 1; k < t.size(); ++k) EXPECT_LE(t[k], t[k - 1]) << i;
    EXPECT_GE(r.value - renyi_entanglement_two_qubit(rho, AlphaParam(2)), -1e-6) << i;
  }
}

TEST(MonogamyProperty, LhsIgnoresPartyOrder) {
  for (std::uint64_t i = 0; i < 200; ++i) {
    auto rng = case_rng(50, i);
    const PureState psi = haar_random_pure(4, rng.next_u64());
    std::vector<std::size_t> b{1, 2, 3};
    for (std::size_t k = 3; k > 1; --k) std::swap(b[k - 1], b[rng.next_u64() % k]);
    const LemmaSelector sel{};
    const MonogamyReport x = verify(ChainState(psi), AlphaParam(2.5), EtaParam(1.5), sel);
    const MonogamyReport y = verify(ChainState(psi, 0, b), AlphaParam(2.5), EtaParam(1.5), sel);
    EXPECT_EQ(x.lhs, y.lhs) << i;
    EXPECT_NEAR(x.rhs_new, y.rhs_new, 1e-12) << i;
  }
}

TEST(MonogamyProperty, TighteningNonNegativeOnRandomProfiles) {
  for (std::uint64_t i = 0; i < 2000; ++i) {
    auto rng = case_rng(51, i);
    const std::size_t k = 2 + rng.next_u64() % 4;
    MarginalProfile p;
    p.c_global = 1;
    p.e_global = 1;
    for (std::size_t j = 0; j < k; ++j) {
      p.c_pair.push_back(rng.uniform());
      p.parties.push_back(j + 1);
    }
    const bool high = i % 2 == 0;
    p.alpha = high ? draw(rng, 2, 4) : draw(rng, kAnalyticAlphaThreshold, 1.99);
    for (double c : p.c_pair) p.e_pair.push_back(g_alpha(c, AlphaParam(p.alpha)));
    const EtaParam eta(high ? draw(rng, 1, 4) : draw(rng, 2, 5));
    std::vector<LemmaSelector> sels;
    if (high) {
      sels.push_back({Lemma::L2, {}, std::nullopt});
      for (std::size_t m = 1; m + 2 <= k; ++m) sels.push_back({Lemma::L3, {}, m});
    } else {
      sels.push_back({Lemma::L4, Lemma4Variant::ProofConsistent, std::nullopt});
      for (std::size_t m = 1; m + 2 <= k; ++m) sels.push_back({Lemma::L5, {}, m});
    }
    for (const auto& s : sels) {
      EXPECT_GE(evaluate(p, eta, s).tightening, -kTighteningTolerance) << i;
    }
  }
}

TEST(MonogamyProperty, HaarMarginsInRegime) {
  for (std::uint64_t i = 0; i < 500; ++i) {
    const PureState psi = haar_random_pure(3 + i % 2, derive_seed(52, i));
    const ChainState chain(psi);
    const ChainMeasurements m = measure_chain(chain);
    const MarginalProfile hi = profile_at(m, AlphaParam(2.3));
    const MarginalProfile lo = profile_at(m, AlphaParam(1.1));
    EXPECT_FALSE(evaluate(hi, EtaParam(1.3), {Lemma::L2, {}, std::nullopt}).violates()) << i;
    EXPECT_FALSE(evaluate(lo, EtaParam(2.5), {Lemma::L4, Lemma4Variant::ProofConsistent, std::nullopt}).violates()) << i;
    if (chain.num_qubits() == 4) {
      EXPECT_FALSE(evaluate(hi, EtaParam(2), {Lemma::L3, {}, 1}).violates()) << i;
      EXPECT_FALSE(evaluate(lo, EtaParam(3), {Lemma::L5, {}, 1}).violates()) << i;
    }
  }
}

TEST(MonogamyProperty, ReportsReproducible) {
  for (std::uint64_t i = 0; i < 50; ++i) {
    const LemmaSelector sel{};
    const auto a = verify(ChainState(haar_random_pure(3, i)), AlphaParam(2), EtaParam(2), sel);
    const auto b = verify(ChainState(haar_random_pure(3, i)), AlphaParam(2), EtaParam(2), sel);
    EXPECT_EQ(a.lhs, b.lhs);
    EXPECT_EQ(a.rhs_new, b.rhs_new);
    EXPECT_EQ(a.rhs_baseline, b.rhs_baseline);
  }
}
