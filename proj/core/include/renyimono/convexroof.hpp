#pragma once

// Numerical convex roof: minimizes the ensemble average of a pure-state
// measure over pure-state decompositions of a mixed state.
//
// Decompositions are parameterized by an m x r isometry U mixing the
// eigen-ensemble {w_k = sqrt(lambda_k) e_k} of rank r:
//   psi~_i = sum_k U_ik w_k,  p_i = |psi~_i|^2,  sum_i psi~_i psi~_i^dagger = rho.
// Every candidate is therefore a valid decomposition and the returned value
// is an upper bound on the true roof, never a lower bound.
//
// Party A of the pure-state measure is qubit 0 (A | rest).

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "renyimono/linalg.hpp"
#include "renyimono/measures.hpp"

namespace renyimono {

struct RoofMeasure {
  enum class Kind { Concurrence, RenyiAlpha };
  Kind kind = Kind::Concurrence;
  double alpha = 2.0;  // used for RenyiAlpha only

  static RoofMeasure concurrence() { return {Kind::Concurrence, 2.0}; }
  static RoofMeasure renyi(const AlphaParam& a) { return {Kind::RenyiAlpha, a.value()}; }
};

struct RoofSchedule {
  std::size_t restarts = 20;
  std::size_t iterations = 500;
  double initial_step = 0.3;
  double decay = 0.97;
  // Defaults to 2 * rank; must lie in [rank, 4 * rank].
  std::optional<std::size_t> ensemble_size;
  std::uint64_t seed = 0;
  std::size_t workers = 1;
  // Keep the best-so-far value of every restart: its starting value, then
  // one entry per iteration.
  bool record_trace = false;
};

struct RoofProblem {
  DensityMatrix rho;
  RoofMeasure measure;
  RoofSchedule schedule;
};

struct EnsembleMember {
  double weight;
  PureState state;
};

struct RoofResult {
  double value;  // upper bound on the convex roof
  std::vector<EnsembleMember> ensemble;
  std::size_t rank;
  std::size_t ensemble_size;
  std::vector<std::vector<double>> traces;  // per restart, when recorded
};

inline constexpr double kRoofRankTolerance = 1e-12;
inline constexpr double kRoofGapTolerance = 1e-6;

// Pure-state measure of A = qubit 0 against the rest.
double roof_pure_measure(const PureState& psi, const RoofMeasure& measure);

RoofResult roof_upper_bound(const RoofProblem& problem);

// roof_upper_bound(RenyiAlpha) - renyi_entanglement_two_qubit(rho);
// nonnegative up to optimizer roundoff.
double roof_gap(const DensityMatrix& rho, const AlphaParam& a, const RoofSchedule& schedule);
// roof_upper_bound(Concurrence) - concurrence_two_qubit(rho).
double roof_gap_concurrence(const DensityMatrix& rho, const RoofSchedule& schedule);

}  // namespace renyimono
