#pragma once

// Concurrence, Renyi-alpha entropy/entanglement and the scalar inequalities
// behind the tightened monogamy bounds.

#include <cstddef>
#include <span>

#include "renyimono/linalg.hpp"

namespace renyimono {

// (sqrt(7) - 1) / 2: smallest alpha for which the two-qubit Renyi-alpha
// entanglement is a function of the concurrence alone.
inline constexpr double kAnalyticAlphaThreshold = 0.82287565553229529525;

class AlphaParam {
 public:
  // alpha > 0 and |alpha - 1| > 1e-9, else DomainError.
  explicit AlphaParam(double alpha);
  double value() const noexcept { return alpha_; }
  bool analytic_ok() const noexcept { return alpha_ >= kAnalyticAlphaThreshold; }

 private:
  double alpha_;
};

class EtaParam {
 public:
  // eta >= 1, else DomainError.
  explicit EtaParam(double eta);
  double value() const noexcept { return eta_; }
  double t() const noexcept { return eta_ / 2.0; }

 private:
  double eta_;
};

// sqrt(2 (1 - tr rho_A^2)) for the bipartition side_a | rest.
double concurrence_pure(const PureState& psi, std::span<const std::size_t> side_a);

// Wootters concurrence max(0, l1 - l2 - l3 - l4) of a two-qubit state.
//
// The l_i are the singular values of tau = W^T (Y x Y) W, where rho = W W^dagger
// is the eigen-ensemble factorization. These coincide with the square roots of
// the eigenvalues of rho (Y x Y) rho^* (Y x Y); taking singular values through
// the Hermitian dilation [[0, tau], [tau^dagger, 0]] avoids the square-root
// amplification of roundoff near rank-deficient inputs.
double concurrence_two_qubit(const DensityMatrix& rho);

// The same quantity through sqrt(sqrt(rho) rho~ sqrt(rho)). Accurate to about
// 1e-8 near pure inputs; kept as a second route for cross-checks.
double concurrence_two_qubit_hermitian_form(const DensityMatrix& rho);

// g_alpha(x) = log2[((1 - s)/2)^alpha + ((1 + s)/2)^alpha] / (1 - alpha),
// s = sqrt(1 - x^2), for x in [0, 1] (1e-12 slack). g(0) = 0 and g(1) = 1
// exactly.
double g_alpha(double x, const AlphaParam& a);

// log2(tr rho^alpha) / (1 - alpha); never negative.
double renyi_entropy(const DensityMatrix& rho, const AlphaParam& a);

inline constexpr double kDualPathTolerance = 1e-10;

// Renyi entropy of the single-qubit marginal on side_a. When
// a.analytic_ok(), the result is cross-checked against
// g_alpha(concurrence_pure) and a ConsistencyError is thrown on mismatch.
double renyi_entanglement_pure(const PureState& psi, std::span<const std::size_t> side_a,
                               const AlphaParam& a);

// g_alpha(C(rho)); RegimeError when alpha is below the analytic threshold.
double renyi_entanglement_two_qubit(const DensityMatrix& rho, const AlphaParam& a);

struct Lemma1Terms {
  double lhs;   // (1 + x)^mu
  double mid;   // 1 + (mu/2) x + (2^mu - mu/2 - 1) x^mu
  double weak;  // 1 + (2^mu - 1) x^mu
};

Lemma1Terms lemma1_terms(double x, double mu);

struct InequalityCheck {
  bool holds;
  double residual;
};

inline constexpr double kSuperadditivityTolerance = 1e-10;

// Unchecked residual, for exploring parameters outside the proven regimes:
//   squared = false: g(sqrt(x^2+y^2)) - g(x) - g(y)
//   squared = true:  g(sqrt(x^2+y^2))^2 - g(x)^2 - g(y)^2
double superadditivity_residual(double x, double y, const AlphaParam& a, bool squared);

// Regime-gated version: squared=false requires alpha >= 2, squared=true
// requires the analytic threshold (RegimeError otherwise).
InequalityCheck check_superadditivity(double x, double y, const AlphaParam& a, bool squared);

}  // namespace renyimono
