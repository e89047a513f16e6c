#include "renyimono/convexroof.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "renyimono/errors.hpp"
#include "renyimono/parallel.hpp"
#include "renyimono/rng.hpp"

namespace renyimono {

namespace {

// Weighted measure p * E(psi / |psi|) of an unnormalized vector, from the
// spectrum of its qubit-0 marginal.
double weighted_measure(std::span<const Complex> v, const RoofMeasure& measure) {
  const std::size_t half = v.size() / 2;
  double a = 0.0;
  double b = 0.0;
  Complex c = 0.0;
  for (std::size_t t = 0; t < half; ++t) {
    a += std::norm(v[t]);
    b += std::norm(v[half + t]);
    c += v[t] * std::conj(v[half + t]);
  }
  const double p = a + b;
  if (!(p > 0.0)) return 0.0;
  const double det = std::max(0.0, a * b - std::norm(c));
  if (measure.kind == RoofMeasure::Kind::Concurrence) return 2.0 * std::sqrt(det);

  const double det_n = det / (p * p);  // product of the marginal eigenvalues
  const double hi = 0.5 * (1.0 + std::sqrt(std::max(0.0, 1.0 - 4.0 * det_n)));
  const double lo = det_n / hi;
  if (lo <= 0.0) return 0.0;
  const double alpha = measure.alpha;
  const double entropy = std::log2(std::pow(lo, alpha) + std::pow(hi, alpha)) / (1.0 - alpha);
  return p * std::max(0.0, entropy);
}

// Orthonormalizes the columns of a row-major m x r matrix in place.
void gram_schmidt(std::vector<Complex>& u, std::size_t m, std::size_t r) {
  for (std::size_t k = 0; k < r; ++k) {
    for (std::size_t j = 0; j < k; ++j) {
      Complex dot = 0.0;
      for (std::size_t i = 0; i < m; ++i) dot += std::conj(u[i * r + j]) * u[i * r + k];
      for (std::size_t i = 0; i < m; ++i) u[i * r + k] -= dot * u[i * r + j];
    }
    double norm2 = 0.0;
    for (std::size_t i = 0; i < m; ++i) norm2 += std::norm(u[i * r + k]);
    const double inv = 1.0 / std::sqrt(norm2);
    for (std::size_t i = 0; i < m; ++i) u[i * r + k] *= inv;
  }
}

struct EigenEnsemble {
  std::size_t dim;
  std::size_t rank;
  std::vector<Complex> w;  // row-major rank x dim: w[k] = sqrt(lambda_k) e_k
};

EigenEnsemble eigen_ensemble(const DensityMatrix& rho) {
  const EigenDecomposition eig = hermitian_eig(rho.matrix());
  const std::size_t d = rho.dim();
  EigenEnsemble ens{d, 0, {}};
  for (std::size_t k = d; k-- > 0;) {
    if (eig.values[k] <= kRoofRankTolerance) continue;
    const double root = std::sqrt(eig.values[k]);
    for (std::size_t i = 0; i < d; ++i) ens.w.push_back(eig.vectors(i, k) * root);
    ++ens.rank;
  }
  return ens;
}


struct RestartOutcome {
  double value = std::numeric_limits<double>::infinity();
  std::vector<Complex> members;  // row-major m x dim, unnormalized psi~_i
  std::vector<double> trace;
};

// One restart of the local search. The state is the list of subnormalized
// members psi~_i = sum_k U_ik w_k for a random initial isometry U. An
// iteration visits every pair (i, j) once and proposes the two-member mixing
//   psi~_i' =  cos(theta) psi~_i - e^{-i phi} sin(theta) psi~_j
//   psi~_j' =  e^{i phi} sin(theta) psi~_i + cos(theta) psi~_j
// i.e. U <- G U for a unitary G near the identity, with theta ~ step * N(0,1)
// and phi uniform. A proposal is kept only if it lowers the pair's
// contribution, so the best value never increases. The step decays
// geometrically once per iteration.
RestartOutcome run_restart(const EigenEnsemble& ens, std::size_t m, const RoofMeasure& measure,
                           const RoofSchedule& schedule, std::size_t restart) {
  const std::size_t r = ens.rank;
  const std::size_t d = ens.dim;
  Rng rng(schedule.seed, restart);

  std::vector<Complex> u(m * r);
  for (Complex& z : u) z = rng.complex_gaussian();
  gram_schmidt(u, m, r);

  RestartOutcome out;
  out.members.assign(m * d, Complex{});
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t k = 0; k < r; ++k) {
      for (std::size_t x = 0; x < d; ++x) out.members[i * d + x] += u[i * r + k] * ens.w[k * d + x];
    }
  }
  auto member = [&](std::vector<Complex>& v, std::size_t i) {
    return std::span<const Complex>(v.data() + i * d, d);
  };
  std::vector<double> contrib(m);
  for (std::size_t i = 0; i < m; ++i) contrib[i] = weighted_measure(member(out.members, i), measure);

  auto total = [&] {
    double s = 0.0;
    for (double c : contrib) s += c;
    return s;
  };
  if (schedule.record_trace) {
    out.trace.reserve(schedule.iterations + 1);
    out.trace.push_back(total());
  }

  std::vector<Complex> scratch(2 * d);
  double step = schedule.initial_step;
  for (std::size_t it = 0; it < schedule.iterations; ++it) {
    for (std::size_t i = 0; i + 1 < m; ++i) {
      for (std::size_t j = i + 1; j < m; ++j) {
        const double theta = step * rng.gaussian();
        const Complex phase = std::polar(1.0, 2.0 * std::numbers::pi * rng.uniform());
        const double c = std::cos(theta);
        const double s = std::sin(theta);
        Complex* vi = out.members.data() + i * d;
        Complex* vj = out.members.data() + j * d;
        for (std::size_t x = 0; x < d; ++x) {
          scratch[x] = c * vi[x] - std::conj(phase) * s * vj[x];
          scratch[d + x] = phase * s * vi[x] + c * vj[x];
        }
        const double ci = weighted_measure({scratch.data(), d}, measure);
        const double cj = weighted_measure({scratch.data() + d, d}, measure);
        if (ci + cj < contrib[i] + contrib[j]) {
          std::copy(scratch.begin(), scratch.begin() + d, vi);
          std::copy(scratch.begin() + d, scratch.end(), vj);
          contrib[i] = ci;
          contrib[j] = cj;
        }
      }
    }
    if (schedule.record_trace) out.trace.push_back(total());
    step *= schedule.decay;
  }
  out.value = total();
  return out;
}

void validate_schedule(const RoofSchedule& s) {
  if (s.restarts < 1) throw DomainError("roof schedule: need at least one restart");
  if (!(s.initial_step > 0.0)) throw DomainError("roof schedule: initial step must be positive");
  if (!(s.decay > 0.0 && s.decay < 1.0)) {
    throw DomainError("roof schedule: decay must lie in (0,1) so the step strictly decreases");
  }
}

}  // namespace

double roof_pure_measure(const PureState& psi, const RoofMeasure& measure) {
  if (psi.num_qubits() < 2) throw DomainError("roof measure needs at least two qubits");
  return weighted_measure(psi.amplitudes(), measure);
}

RoofResult roof_upper_bound(const RoofProblem& problem) {
  const RoofSchedule& schedule = problem.schedule;
  validate_schedule(schedule);
  if (problem.rho.num_qubits() < 2) throw DomainError("roof_upper_bound: need at least two qubits");
  if (problem.measure.kind == RoofMeasure::Kind::RenyiAlpha) (void)AlphaParam(problem.measure.alpha);

  const EigenEnsemble ens = eigen_ensemble(problem.rho);
  const std::size_t r = ens.rank;
  const std::size_t d = ens.dim;

  if (r == 1) {
    std::vector<Complex> v(ens.w.begin(), ens.w.end());
    PureState psi = PureState::normalized(problem.rho.num_qubits(), std::move(v));
    const double value = roof_pure_measure(psi, problem.measure);
    RoofResult result{value, {}, 1, 1, {}};
    result.ensemble.push_back({1.0, std::move(psi)});
    return result;
  }

  const std::size_t m = schedule.ensemble_size.value_or(2 * r);
  if (m < r || m > 4 * r) {
    throw DomainError("roof_upper_bound: ensemble size " + std::to_string(m) +
                      " outside [rank, 4*rank] for rank " + std::to_string(r));
  }

  std::vector<RestartOutcome> outcomes(schedule.restarts);
  parallel_for(schedule.restarts, schedule.workers, [&](std::size_t k) {
    outcomes[k] = run_restart(ens, m, problem.measure, schedule, k);
  });

  // Lowest value wins; ties go to the lowest restart index.
  std::size_t best = 0;
  for (std::size_t k = 1; k < outcomes.size(); ++k) {
    if (outcomes[k].value < outcomes[best].value) best = k;
  }

  RoofResult result{outcomes[best].value, {}, r, m, {}};
  const auto& members = outcomes[best].members;
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<Complex> row(members.begin() + i * d, members.begin() + (i + 1) * d);
    double weight = 0.0;
    for (const Complex& z : row) weight += std::norm(z);
    if (!(weight > 0.0)) continue;
    result.ensemble.push_back({weight, PureState::normalized(problem.rho.num_qubits(), std::move(row))});
  }
  if (schedule.record_trace) {
    for (auto& o : outcomes) result.traces.push_back(std::move(o.trace));
  }
  return result;
}

double roof_gap(const DensityMatrix& rho, const AlphaParam& a, const RoofSchedule& schedule) {
  if (!a.analytic_ok()) {
    throw RegimeError("roof_gap: alpha below (sqrt(7)-1)/2 has no analytic two-qubit value");
  }
  const double analytic = renyi_entanglement_two_qubit(rho, a);
  const RoofResult roof = roof_upper_bound({rho, RoofMeasure::renyi(a), schedule});
  return roof.value - analytic;
}

double roof_gap_concurrence(const DensityMatrix& rho, const RoofSchedule& schedule) {
  const double analytic = concurrence_two_qubit(rho);
  const RoofResult roof = roof_upper_bound({rho, RoofMeasure::concurrence(), schedule});
  return roof.value - analytic;
}

}  // namespace renyimono
