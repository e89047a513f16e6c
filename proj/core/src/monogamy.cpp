#include "renyimono/monogamy.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "renyimono/errors.hpp"

namespace renyimono {

namespace {

double weight_base(const EtaParam& e, BaselineRegime regime) {
  const double s = regime == BaselineRegime::EtaPower ? e.value() : e.t();
  return std::pow(2.0, s) - 1.0;
}

void require_parties(const MarginalProfile& prof, std::size_t at_least) {
  if (prof.e_pair.size() != prof.c_pair.size()) {
    throw DomainError("profile: e_pair and c_pair lengths differ");
  }
  if (prof.num_parties() < at_least) {
    throw DomainError("profile needs at least " + std::to_string(at_least) + " B parties, has " +
                      std::to_string(prof.num_parties()));
  }
}

void require_split(const MarginalProfile& prof, std::size_t m) {
  require_parties(prof, 3);
  if (m < 1 || m + 2 > prof.num_parties()) {
    throw DomainError("split index m = " + std::to_string(m) + " outside [1, N-3]");
  }
}

void require_alpha_regime(const MarginalProfile& prof, Lemma lemma, const EtaParam& e) {
  check_regime(lemma, AlphaParam(prof.alpha), e);
}

// sum_{k<m} w^k E_k^eta + w^{m+1} sum_{k=m}^{K-3} E_k^eta; the shared prefix
// of the split-shaped bounds.
double split_prefix(const std::vector<double>& e_pair, std::size_t m, double w, double eta) {
  const std::size_t k_total = e_pair.size();
  double sum = 0.0;
  for (std::size_t k = 0; k < m; ++k) sum += std::pow(w, static_cast<double>(k)) * std::pow(e_pair[k], eta);
  double middle = 0.0;
  for (std::size_t k = m; k + 2 < k_total; ++k) middle += std::pow(e_pair[k], eta);
  return sum + std::pow(w, static_cast<double>(m + 1)) * middle;
}

// sum_{k=0}^{K-3} w^k E_k^eta
double descending_prefix(const std::vector<double>& e_pair, double w, double eta) {
  double sum = 0.0;
  for (std::size_t k = 0; k + 2 < e_pair.size(); ++k) {
    sum += std::pow(w, static_cast<double>(k)) * std::pow(e_pair[k], eta);
  }
  return sum;
}

}  // namespace

std::string to_string(Lemma lemma) {
  switch (lemma) {
    case Lemma::L2: return "L2";
    case Lemma::L3: return "L3";
    case Lemma::L4: return "L4";
    case Lemma::L5: return "L5";
  }
  return "?";
}

std::string to_string(Lemma4Variant variant) {
  return variant == Lemma4Variant::AsPrinted ? "printed" : "proof";
}

std::optional<Lemma> parse_lemma(std::string_view text) {
  if (text == "L2") return Lemma::L2;
  if (text == "L3") return Lemma::L3;
  if (text == "L4") return Lemma::L4;
  if (text == "L5") return Lemma::L5;
  return std::nullopt;
}

std::optional<Lemma4Variant> parse_variant(std::string_view text) {
  if (text == "proof") return Lemma4Variant::ProofConsistent;
  if (text == "printed") return Lemma4Variant::AsPrinted;
  return std::nullopt;
}

bool in_regime(Lemma lemma, double alpha, double eta) noexcept {
  switch (lemma) {
    case Lemma::L2:
    case Lemma::L3:
      return alpha >= 2.0 && eta >= 1.0;
    case Lemma::L4:
    case Lemma::L5:
      return alpha >= kAnalyticAlphaThreshold && alpha < 2.0 && eta >= 2.0;
  }
  return false;
}

void check_regime(Lemma lemma, const AlphaParam& a, const EtaParam& e) {
  if (in_regime(lemma, a.value(), e.value())) return;
  const bool high = lemma == Lemma::L2 || lemma == Lemma::L3;
  throw RegimeError(to_string(lemma) + " requires " +
                    (high ? std::string("alpha >= 2 and eta >= 1")
                          : std::string("(sqrt(7)-1)/2 <= alpha < 2 and eta >= 2")) +
                    " (got alpha = " + std::to_string(a.value()) +
                    ", eta = " + std::to_string(e.value()) + ")");
}

// ---------------------------------------------------------------------------

ChainState::ChainState(PureState psi, std::size_t party_a, std::vector<std::size_t> parties_b)
    : psi_(std::move(psi)), party_a_(party_a), parties_b_(std::move(parties_b)) {
  const std::size_t n = psi_.num_qubits();
  if (n < 3) throw DomainError("ChainState: need at least 3 qubits");
  if (party_a_ >= n) throw DomainError("ChainState: party A out of range");
  if (parties_b_.empty()) {
    for (std::size_t q = 0; q < n; ++q) {
      if (q != party_a_) parties_b_.push_back(q);
    }
  }
  std::vector<bool> seen(n, false);
  seen[party_a_] = true;
  for (std::size_t q : parties_b_) {
    if (q >= n || seen[q]) throw DomainError("ChainState: parties must cover every qubit exactly once");
    seen[q] = true;
  }
  if (parties_b_.size() != n - 1) throw DomainError("ChainState: parties must cover every qubit");
}

double MarginalProfile::ckw_residual() const noexcept {
  double s = c_global * c_global;
  for (double c : c_pair) s -= c * c;
  return s;
}

ChainMeasurements measure_chain(const ChainState& chain) {
  const std::size_t a = chain.party_a();
  const std::size_t side_a[] = {a};
  ChainMeasurements out{concurrence_pure(chain.psi(), side_a),
                        {},
                        {chain.parties_b().begin(), chain.parties_b().end()},
                        reduced_density(chain.psi(), side_a)};
  out.c_pair.reserve(out.parties.size());
  for (std::size_t b : out.parties) {
    const std::size_t pair[] = {a, b};
    out.c_pair.push_back(concurrence_two_qubit(reduced_density(chain.psi(), pair)));
  }
  return out;
}

MarginalProfile profile_at(const ChainMeasurements& measured, const AlphaParam& a) {
  if (!a.analytic_ok()) {
    throw RegimeError("profile: alpha below (sqrt(7)-1)/2 has no two-qubit closed form");
  }
  MarginalProfile prof{a.value(), measured.c_global, measured.c_pair, {}, 0.0, measured.parties};
  prof.e_pair.reserve(prof.c_pair.size());
  for (double c : prof.c_pair) prof.e_pair.push_back(g_alpha(c, a));

  // A is a single qubit, so the spectral value and g_alpha(C) must agree.
  prof.e_global = renyi_entropy(measured.marginal_a, a);
  const double via_concurrence = g_alpha(measured.c_global, a);
  if (std::abs(prof.e_global - via_concurrence) > kDualPathTolerance) {
    throw ConsistencyError("profile: E_alpha(A|rest) spectral/concurrence mismatch");
  }
  return prof;
}

MarginalProfile profile(const ChainState& chain, const AlphaParam& a) {
  return profile_at(measure_chain(chain), a);
}

MarginalProfile rearranged(const MarginalProfile& prof, std::span<const std::size_t> order) {
  if (order.size() != prof.num_parties()) throw DomainError("rearranged: order length mismatch");
  MarginalProfile out{prof.alpha, prof.c_global, {}, {}, prof.e_global, {}};
  std::vector<bool> seen(order.size(), false);
  for (std::size_t k : order) {
    if (k >= order.size() || seen[k]) throw DomainError("rearranged: order is not a permutation");
    seen[k] = true;
    out.c_pair.push_back(prof.c_pair[k]);
    out.e_pair.push_back(prof.e_pair[k]);
    out.parties.push_back(k < prof.parties.size() ? prof.parties[k] : k);
  }
  return out;
}

std::vector<std::size_t> descending_order(const MarginalProfile& prof) {
  std::vector<std::size_t> order(prof.num_parties());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return prof.c_pair[i] > prof.c_pair[j]; });
  return order;
}

std::vector<std::size_t> split_order(const MarginalProfile& prof, std::size_t m) {
  std::vector<std::size_t> order = descending_order(prof);
  if (m > order.size()) throw DomainError("split_order: m exceeds party count");
  std::reverse(order.begin() + static_cast<std::ptrdiff_t>(m), order.end());
  return order;
}

bool ordering_condition(const MarginalProfile& prof, std::size_t pos, bool descending) {
  const std::size_t k_total = prof.num_parties();
  if (k_total < 2 || pos + 2 > k_total) {
    throw DomainError("ordering_condition: position " + std::to_string(pos) + " outside [0, N-3]");
  }
  double tail = 0.0;
  for (std::size_t j = pos + 1; j < k_total; ++j) tail += prof.c_pair[j] * prof.c_pair[j];
  const double head = prof.c_pair[pos] * prof.c_pair[pos];
  return descending ? head >= tail - kOrderingSlack : head <= tail + kOrderingSlack;
}

bool descending_condition(const MarginalProfile& prof) {
  for (std::size_t pos = 0; pos + 2 <= prof.num_parties(); ++pos) {
    if (!ordering_condition(prof, pos, true)) return false;
  }
  return true;
}

bool split_condition(const MarginalProfile& prof, std::size_t m) {
  require_split(prof, m);
  for (std::size_t pos = 0; pos + 2 <= prof.num_parties(); ++pos) {
    if (!ordering_condition(prof, pos, pos < m)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Bounds

double bound_lemma2(const MarginalProfile& prof, const EtaParam& e) {
  require_parties(prof, 2);
  require_alpha_regime(prof, Lemma::L2, e);
  const double eta = e.value();
  const double w = std::pow(2.0, eta) - 1.0;
  const std::size_t k_total = prof.num_parties();
  const double x = prof.e_pair[k_total - 2];
  const double y = prof.e_pair[k_total - 1];
  const double bracket = std::pow(x, eta) + 0.5 * eta * std::pow(x, eta - 1.0) * y +
                         (std::pow(2.0, eta) - 0.5 * eta - 1.0) * std::pow(y, eta);
  return descending_prefix(prof.e_pair, w, eta) +
         std::pow(w, static_cast<double>(k_total - 2)) * bracket;
}

double bound_lemma3(const MarginalProfile& prof, std::size_t m, const EtaParam& e) {
  require_split(prof, m);
  require_alpha_regime(prof, Lemma::L3, e);
  const double eta = e.value();
  const double w = std::pow(2.0, eta) - 1.0;
  const std::size_t k_total = prof.num_parties();
  const double x = prof.e_pair[k_total - 2];
  const double y = prof.e_pair[k_total - 1];
  const double bracket = (std::pow(2.0, eta) - 0.5 * eta - 1.0) * std::pow(x, eta) +
                         0.5 * eta * x * std::pow(y, eta - 1.0) + std::pow(y, eta);
  return split_prefix(prof.e_pair, m, w, eta) + std::pow(w, static_cast<double>(m)) * bracket;
}

double bound_lemma4(const MarginalProfile& prof, const EtaParam& e, Lemma4Variant variant) {
  require_parties(prof, 2);
  require_alpha_regime(prof, Lemma::L4, e);
  const double eta = e.value();
  const double t = e.t();
  const double w = std::pow(2.0, t) - 1.0;
  const std::size_t k_total = prof.num_parties();
  const double x = prof.e_pair[k_total - 2];
  const double y = prof.e_pair[k_total - 1];
  const double cross = variant == Lemma4Variant::ProofConsistent
                           ? std::pow(x, eta - 2.0) * y * y
                           : std::pow(y, eta - 2.0) * x * x;
  const double bracket =
      std::pow(x, eta) + 0.5 * t * cross + (std::pow(2.0, t) - 0.5 * t - 1.0) * std::pow(y, eta);
  return descending_prefix(prof.e_pair, w, eta) +
         std::pow(w, static_cast<double>(k_total - 2)) * bracket;
}

double bound_lemma5(const MarginalProfile& prof, std::size_t m, const EtaParam& e) {
  require_split(prof, m);
  require_alpha_regime(prof, Lemma::L5, e);
  const double eta = e.value();
  const double t = e.t();
  const double w = std::pow(2.0, t) - 1.0;
  const std::size_t k_total = prof.num_parties();
  const double x = prof.e_pair[k_total - 2];
  const double y = prof.e_pair[k_total - 1];
  const double bracket = (std::pow(2.0, t) - 0.5 * t - 1.0) * std::pow(x, eta) +
                         0.5 * t * x * x * std::pow(y, eta - 2.0) + std::pow(y, eta);
  return split_prefix(prof.e_pair, m, w, eta) + std::pow(w, static_cast<double>(m)) * bracket;
}

double bound_baseline(const MarginalProfile& prof, const EtaParam& e, BaselineRegime regime) {
  require_parties(prof, 1);
  if (regime == BaselineRegime::TPower && e.value() < 2.0) {
    throw RegimeError("t-power baseline requires eta >= 2");
  }
  const double w = weight_base(e, regime);
  double sum = 0.0;
  for (std::size_t k = 0; k < prof.num_parties(); ++k) {
    sum += std::pow(w, static_cast<double>(k)) * std::pow(prof.e_pair[k], e.value());
  }
  return sum;
}

double bound_baseline_split(const MarginalProfile& prof, std::size_t m, const EtaParam& e,
                            BaselineRegime regime) {
  require_split(prof, m);
  if (regime == BaselineRegime::TPower && e.value() < 2.0) {
    throw RegimeError("t-power baseline requires eta >= 2");
  }
  const double eta = e.value();
  const double w = weight_base(e, regime);
  const std::size_t k_total = prof.num_parties();
  const double bracket =
      w * std::pow(prof.e_pair[k_total - 2], eta) + std::pow(prof.e_pair[k_total - 1], eta);
  return split_prefix(prof.e_pair, m, w, eta) + std::pow(w, static_cast<double>(m)) * bracket;
}

// ---------------------------------------------------------------------------

MonogamyReport evaluate(const MarginalProfile& prof, const EtaParam& e,
                        const LemmaSelector& selector) {
  const AlphaParam a(prof.alpha);
  check_regime(selector.lemma, a, e);
  require_parties(prof, 2);

  const bool split_shaped = selector.lemma == Lemma::L3 || selector.lemma == Lemma::L5;
  std::size_t m = 0;
  if (split_shaped) {
    if (!selector.split) throw DomainError(to_string(selector.lemma) + " needs a split index m");
    m = *selector.split;
    require_split(prof, m);
  }

  const std::vector<std::size_t> order = split_shaped ? split_order(prof, m) : descending_order(prof);
  const MarginalProfile arranged = rearranged(prof, order);

  MonogamyReport report{};
  report.lemma = selector.lemma;
  report.alpha = prof.alpha;
  report.eta = e.value();
  report.lhs = std::pow(prof.e_global, e.value());
  report.party_order = arranged.parties;

  switch (selector.lemma) {
    case Lemma::L2:
      report.condition_met = descending_condition(arranged);
      report.rhs_new = bound_lemma2(arranged, e);
      report.rhs_baseline = bound_baseline(arranged, e, BaselineRegime::EtaPower);
      break;
    case Lemma::L4: {
      report.variant = selector.variant;
      report.condition_met = descending_condition(arranged);
      report.rhs_new = bound_lemma4(arranged, e, selector.variant);
      report.rhs_baseline = bound_baseline(arranged, e, BaselineRegime::TPower);
      const Lemma4Variant other = selector.variant == Lemma4Variant::ProofConsistent
                                      ? Lemma4Variant::AsPrinted
                                      : Lemma4Variant::ProofConsistent;
      report.other_variant_margin = report.lhs - bound_lemma4(arranged, e, other);
      break;
    }
    case Lemma::L3:
      report.m = m;
      report.condition_met = split_condition(arranged, m);
      report.rhs_new = bound_lemma3(arranged, m, e);
      report.rhs_baseline = bound_baseline_split(arranged, m, e, BaselineRegime::EtaPower);
      break;
    case Lemma::L5:
      report.m = m;
      report.condition_met = split_condition(arranged, m);
      report.rhs_new = bound_lemma5(arranged, m, e);
      report.rhs_baseline = bound_baseline_split(arranged, m, e, BaselineRegime::TPower);
      break;
  }
  report.margin = report.lhs - report.rhs_new;
  report.tightening = report.rhs_new - report.rhs_baseline;
  return report;
}

MonogamyReport verify(const ChainState& chain, const AlphaParam& a, const EtaParam& e,
                      const LemmaSelector& selector) {
  check_regime(selector.lemma, a, e);
  return evaluate(profile(chain, a), e, selector);
}

std::vector<MonogamyReport> verify_all_splits(const ChainState& chain, const AlphaParam& a,
                                              const EtaParam& e, Lemma lemma) {
  if (lemma != Lemma::L3 && lemma != Lemma::L5) {
    throw DomainError("verify_all_splits applies to L3 and L5 only");
  }
  check_regime(lemma, a, e);
  if (chain.num_qubits() < 4) throw DomainError(to_string(lemma) + " needs N >= 4");
  const MarginalProfile prof = profile(chain, a);
  std::vector<MonogamyReport> reports;
  for (std::size_t m = 1; m + 2 <= prof.num_parties(); ++m) {
    reports.push_back(evaluate(prof, e, {lemma, Lemma4Variant::ProofConsistent, m}));
  }
  return reports;
}

}  // namespace renyimono
