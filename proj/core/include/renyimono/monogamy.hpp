#pragma once

// Tightened Renyi-alpha monogamy bounds for the star partition
// A | B_1 ... B_{N-1} of an N-qubit pure state, the weaker baseline
// hierarchy they improve on, and per-state verification reports.
//
// Notation: K = N - 1 parties; E_k = E_alpha(rho_{A B_k}) for the k-th party
// in the arrangement used (0-based below); w = 2^s - 1 with s = eta for the
// alpha >= 2 hierarchies (L2, L3) and s = eta/2 for the
// (sqrt(7)-1)/2 <= alpha < 2 hierarchies (L4, L5).

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "renyimono/linalg.hpp"
#include "renyimono/measures.hpp"

namespace renyimono {

enum class Lemma { L2, L3, L4, L5 };
// Only L4 has two readings. ProofConsistent puts the eta-2 exponent on the
// larger party (B_{N-2} under the descending order); AsPrinted puts it on
// B_{N-1}.
enum class Lemma4Variant { ProofConsistent, AsPrinted };
enum class BaselineRegime { EtaPower, TPower };

std::string to_string(Lemma lemma);
std::string to_string(Lemma4Variant variant);
std::optional<Lemma> parse_lemma(std::string_view text);
std::optional<Lemma4Variant> parse_variant(std::string_view text);

bool in_regime(Lemma lemma, double alpha, double eta) noexcept;
// RegimeError with a readable message when !in_regime.
void check_regime(Lemma lemma, const AlphaParam& a, const EtaParam& e);

class ChainState {
 public:
  // parties_b defaults to the qubits other than party_a in ascending order.
  // Throws DomainError unless {party_a} + parties_b covers every qubit once
  // and N >= 3.
  ChainState(PureState psi, std::size_t party_a = 0, std::vector<std::size_t> parties_b = {});

  const PureState& psi() const noexcept { return psi_; }
  std::size_t party_a() const noexcept { return party_a_; }
  std::span<const std::size_t> parties_b() const noexcept { return parties_b_; }
  std::size_t num_qubits() const noexcept { return psi_.num_qubits(); }

 private:
  PureState psi_;
  std::size_t party_a_;
  std::vector<std::size_t> parties_b_;
};

// Alpha-independent part of a profile.
struct ChainMeasurements {
  double c_global;                   // C(A | rest)
  std::vector<double> c_pair;        // Wootters C(rho_{A B_k}), chain order
  std::vector<std::size_t> parties;  // qubit index of each B_k
  DensityMatrix marginal_a;
};

struct MarginalProfile {
  double alpha;
  double c_global;
  std::vector<double> c_pair;
  std::vector<double> e_pair;
  double e_global;
  std::vector<std::size_t> parties;

  std::size_t num_parties() const noexcept { return c_pair.size(); }
  // C^2(A|rest) - sum_k C^2(A|B_k)
  double ckw_residual() const noexcept;
};

inline constexpr double kCkwTolerance = 1e-9;
inline constexpr double kOrderingSlack = 1e-12;
inline constexpr double kMarginTolerance = 1e-9;
inline constexpr double kTighteningTolerance = 1e-12;

ChainMeasurements measure_chain(const ChainState& chain);
// Requires a.analytic_ok() (RegimeError otherwise).
MarginalProfile profile_at(const ChainMeasurements& measured, const AlphaParam& a);
MarginalProfile profile(const ChainState& chain, const AlphaParam& a);

// Reorders the parties: result.c_pair[k] = prof.c_pair[order[k]].
MarginalProfile rearranged(const MarginalProfile& prof, std::span<const std::size_t> order);
// Parties by descending pair concurrence (stable).
std::vector<std::size_t> descending_order(const MarginalProfile& prof);
// The m largest parties in descending order followed by the rest in
// ascending order: the arrangement under which a split at m is most likely
// admissible.
std::vector<std::size_t> split_order(const MarginalProfile& prof, std::size_t m);

// Surrogate ordering test at 0-based position pos in [0, K-2]:
//   descending: c_pos^2 >= sum_{j>pos} c_j^2
//   ascending:  c_pos^2 <= sum_{j>pos} c_j^2
// with kOrderingSlack.
bool ordering_condition(const MarginalProfile& prof, std::size_t pos, bool descending);
// Descending at every position.
bool descending_condition(const MarginalProfile& prof);
// Descending at positions < m, ascending at positions m .. K-2.
bool split_condition(const MarginalProfile& prof, std::size_t m);

double bound_lemma2(const MarginalProfile& prof, const EtaParam& e);
double bound_lemma3(const MarginalProfile& prof, std::size_t m, const EtaParam& e);
double bound_lemma4(const MarginalProfile& prof, const EtaParam& e, Lemma4Variant variant);
double bound_lemma5(const MarginalProfile& prof, std::size_t m, const EtaParam& e);
// sum_{k=0}^{K-1} w^k E_k^eta
double bound_baseline(const MarginalProfile& prof, const EtaParam& e, BaselineRegime regime);
// Weak-branch counterpart of the L3/L5 shape:
// sum_{k<m} w^k E_k^eta + w^{m+1} sum_{k=m}^{K-3} E_k^eta + w^m [w E_{K-2}^eta + E_{K-1}^eta]
double bound_baseline_split(const MarginalProfile& prof, std::size_t m, const EtaParam& e,
                            BaselineRegime regime);

struct LemmaSelector {
  Lemma lemma = Lemma::L2;
  Lemma4Variant variant = Lemma4Variant::ProofConsistent;
  std::optional<std::size_t> split;  // m, required for L3/L5
};

struct MonogamyReport {
  Lemma lemma;
  std::optional<Lemma4Variant> variant;  // set for L4 only
  double alpha;
  double eta;
  std::optional<std::size_t> m;
  bool condition_met;  // surrogate ordering condition
  double lhs;          // E_alpha^eta(A | rest)
  double rhs_new;
  double rhs_baseline;
  double margin;      // lhs - rhs_new
  double tightening;  // rhs_new - rhs_baseline
  std::optional<double> other_variant_margin;  // L4: margin of the other reading
  std::vector<std::size_t> party_order;        // B qubits in the arrangement used

  // Asserted rows are all but the as-printed L4 reading.
  bool asserted() const noexcept {
    return !(variant && *variant == Lemma4Variant::AsPrinted);
  }
  bool violates(double tolerance = kMarginTolerance) const noexcept {
    return condition_met && margin < -tolerance;
  }
};

// Evaluates one lemma on a measured profile (parties in chain order). L2/L4
// rearrange parties by descending concurrence; L3/L5 use split_order(m).
MonogamyReport evaluate(const MarginalProfile& prof, const EtaParam& e,
                        const LemmaSelector& selector);
MonogamyReport verify(const ChainState& chain, const AlphaParam& a, const EtaParam& e,
                      const LemmaSelector& selector);
// One report per split m = 1 .. N-3 for L3/L5.
std::vector<MonogamyReport> verify_all_splits(const ChainState& chain, const AlphaParam& a,
                                              const EtaParam& e, Lemma lemma);

}  // namespace renyimono
