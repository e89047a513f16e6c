#include "renyimono/measures.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "renyimono/errors.hpp"

namespace renyimono {

namespace {

constexpr double kUnitIntervalSlack = 1e-12;

void require_bipartition(std::size_t num_qubits, std::span<const std::size_t> side_a) {
  if (side_a.empty() || side_a.size() >= num_qubits) {
    throw DomainError("bipartition side must be a nonempty strict subset of the qubits");
  }
}

// Y x Y in the computational basis.
constexpr double kSpinFlip[4][4] = {
    {0, 0, 0, -1},
    {0, 0, 1, 0},
    {0, 1, 0, 0},
    {-1, 0, 0, 0},
};

double wootters_from_descending(std::vector<double> lambdas) {
  std::sort(lambdas.begin(), lambdas.end(), std::greater<>());
  const double c = lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3];
  return std::clamp(c, 0.0, 1.0);
}

}  // namespace

AlphaParam::AlphaParam(double alpha) : alpha_(alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw DomainError("alpha must be positive");
  if (std::abs(alpha - 1.0) <= 1e-9) throw DomainError("alpha = 1 is excluded");
}

EtaParam::EtaParam(double eta) : eta_(eta) {
  if (!(eta >= 1.0) || !std::isfinite(eta)) throw DomainError("eta must be >= 1");
}

double concurrence_pure(const PureState& psi, std::span<const std::size_t> side_a) {
  require_bipartition(psi.num_qubits(), side_a);
  const DensityMatrix rho_a = reduced_density(psi, side_a);
  const double value = std::sqrt(std::max(0.0, 2.0 * (1.0 - rho_a.purity())));
  const double dim_a = static_cast<double>(rho_a.dim());
  return std::min(value, std::sqrt(2.0 * (1.0 - 1.0 / dim_a)));
}

double concurrence_two_qubit(const DensityMatrix& rho) {
  if (rho.num_qubits() != 2) throw DomainError("concurrence_two_qubit: expected a two-qubit state");
  const EigenDecomposition eig = hermitian_eig(rho.matrix());

  // W = V diag(sqrt(lambda)): columns are the subnormalized eigen-ensemble.
  Complex w[4][4];
  for (std::size_t k = 0; k < 4; ++k) {
    const double root = std::sqrt(std::max(eig.values[k], 0.0));
    for (std::size_t i = 0; i < 4; ++i) w[i][k] = eig.vectors(i, k) * root;
  }
  // tau = W^T S W
  Complex tau[4][4];
  for (std::size_t k = 0; k < 4; ++k) {
    for (std::size_t l = 0; l < 4; ++l) {
      Complex s = 0.0;
      for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 4; ++j) {
          if (kSpinFlip[i][j] != 0.0) s += w[i][k] * kSpinFlip[i][j] * w[j][l];
        }
      }
      tau[k][l] = s;
    }
  }
  std::vector<Complex> dilation(64);
  for (std::size_t k = 0; k < 4; ++k) {
    for (std::size_t l = 0; l < 4; ++l) {
      dilation[k * 8 + (4 + l)] = tau[k][l];
      dilation[(4 + l) * 8 + k] = std::conj(tau[k][l]);
    }
  }
  const std::vector<double> values = hermitian_eigenvalues(ComplexMatrix(8, std::move(dilation)));
  // Ascending: the upper half holds the singular values.
  return wootters_from_descending({std::max(values[7], 0.0), std::max(values[6], 0.0),
                                   std::max(values[5], 0.0), std::max(values[4], 0.0)});
}

double concurrence_two_qubit_hermitian_form(const DensityMatrix& rho) {
  if (rho.num_qubits() != 2) throw DomainError("concurrence_two_qubit: expected a two-qubit state");
  std::vector<Complex> flip(16);
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) flip[i * 4 + j] = kSpinFlip[i][j];
  }
  const ComplexMatrix spin_flip(4, std::move(flip));
  const ComplexMatrix tilde = spin_flip * rho.matrix().conjugate() * spin_flip;
  const ComplexMatrix root = psd_sqrt(rho.matrix());
  const ComplexMatrix r = psd_sqrt(root * tilde * root);
  return wootters_from_descending(hermitian_eigenvalues(r));
}

double g_alpha(double x, const AlphaParam& a) {
  if (!(x >= -kUnitIntervalSlack && x <= 1.0 + kUnitIntervalSlack)) {
    throw DomainError("g_alpha: x = " + std::to_string(x) + " outside [0,1]");
  }
  x = std::clamp(x, 0.0, 1.0);
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  const double alpha = a.value();
  const double s = std::sqrt((1.0 - x) * (1.0 + x));
  const double lo = x * x / (2.0 * (1.0 + s));  // (1 - s)/2 without cancellation
  // lo^alpha + (1 - lo)^alpha - 1, kept in log1p/expm1 form so small x keeps
  // its relative precision.
  const double excess = std::pow(lo, alpha) + std::expm1(alpha * std::log1p(-lo));
  return std::log1p(excess) / ((1.0 - alpha) * std::numbers::ln2);
}

double renyi_entropy(const DensityMatrix& rho, const AlphaParam& a) {
  const double tp = trace_power(rho, a.value());
  return std::max(0.0, std::log2(tp) / (1.0 - a.value()));
}

double renyi_entanglement_pure(const PureState& psi, std::span<const std::size_t> side_a,
                               const AlphaParam& a) {
  require_bipartition(psi.num_qubits(), side_a);
  if (side_a.size() != 1) {
    throw DomainError("renyi_entanglement_pure: side A must be a single qubit");
  }
  const double value = renyi_entropy(reduced_density(psi, side_a), a);
  if (a.analytic_ok()) {
    const double via_concurrence = g_alpha(concurrence_pure(psi, side_a), a);
    if (std::abs(value - via_concurrence) > kDualPathTolerance) {
      throw ConsistencyError("renyi_entanglement_pure: spectral value " + std::to_string(value) +
                             " disagrees with g_alpha(C) = " + std::to_string(via_concurrence));
    }
  }
  return value;
}

double renyi_entanglement_two_qubit(const DensityMatrix& rho, const AlphaParam& a) {
  if (!a.analytic_ok()) {
    throw RegimeError("renyi_entanglement_two_qubit: alpha = " + std::to_string(a.value()) +
                      " is below (sqrt(7)-1)/2; no closed form");
  }
  return g_alpha(concurrence_two_qubit(rho), a);
}

Lemma1Terms lemma1_terms(double x, double mu) {
  if (!(x >= 0.0 && x <= 1.0)) throw DomainError("lemma1_terms: x must lie in [0,1]");
  if (!(mu >= 1.0) || !std::isfinite(mu)) throw DomainError("lemma1_terms: mu must be >= 1");
  const double x_mu = std::pow(x, mu);
  const double two_mu = std::pow(2.0, mu);
  return {
      std::pow(1.0 + x, mu),
      1.0 + 0.5 * mu * x + (two_mu - 0.5 * mu - 1.0) * x_mu,
      1.0 + (two_mu - 1.0) * x_mu,
  };
}

double superadditivity_residual(double x, double y, const AlphaParam& a, bool squared) {
  if (!(x >= 0.0 && y >= 0.0)) throw DomainError("superadditivity: x and y must be nonnegative");
  const double r2 = x * x + y * y;
  if (!(r2 <= 1.0 + kUnitIntervalSlack)) throw DomainError("superadditivity: x^2 + y^2 > 1");
  const double joint = g_alpha(std::min(1.0, std::sqrt(r2)), a);
  const double gx = g_alpha(x, a);
  const double gy = g_alpha(y, a);
  return squared ? joint * joint - (gx * gx + gy * gy) : joint - (gx + gy);
}

InequalityCheck check_superadditivity(double x, double y, const AlphaParam& a, bool squared) {
  if (squared && !a.analytic_ok()) {
    throw RegimeError("squared superadditivity requires alpha >= (sqrt(7)-1)/2");
  }
  if (!squared && a.value() < 2.0) {
    throw RegimeError("superadditivity of g_alpha requires alpha >= 2");
  }
  const double residual = superadditivity_residual(x, y, a, squared);
  return {residual >= -kSuperadditivityTolerance, residual};
}

}  // namespace renyimono
