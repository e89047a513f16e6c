#include "renyimono/sweep.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "renyimono/errors.hpp"
#include "renyimono/parallel.hpp"

namespace renyimono {

namespace {

std::vector<SweepRow> run_sample(const SweepConfig& config, std::size_t sample) {
  const ChainState chain(sample_pure(config.family, config.seed, sample));
  const ChainMeasurements measured = measure_chain(chain);
  std::vector<SweepRow> rows;
  for (double alpha : config.alphas) {
    const MarginalProfile prof = profile_at(measured, AlphaParam(alpha));
    for (double eta : config.etas) {
      const EtaParam e(eta);
      for (Lemma lemma : config.lemmas) {
        auto emit = [&](const LemmaSelector& sel) {
          rows.push_back({config.seed, sample, chain.num_qubits(), evaluate(prof, e, sel)});
        };
        switch (lemma) {
          case Lemma::L2:
            emit({lemma, Lemma4Variant::ProofConsistent, std::nullopt});
            break;
          case Lemma::L4:
            for (Lemma4Variant v : config.variants) emit({lemma, v, std::nullopt});
            break;
          case Lemma::L3:
          case Lemma::L5:
            for (std::size_t m = 1; m + 2 <= prof.num_parties(); ++m) {
              emit({lemma, Lemma4Variant::ProofConsistent, m});
            }
            break;
        }
      }
    }
  }
  return rows;
}

}  // namespace

void validate(const SweepConfig& config) {
  validate(config.family);
  if (!is_pure_family(config.family)) {
    throw DomainError("sweep: global states must be pure; " + describe(config.family) +
                      " is a mixed family");
  }
  if (config.family.num_qubits < 3) throw DomainError("sweep: need at least 3 qubits");
  if (!(config.tolerance > 0.0)) throw DomainError("sweep: tolerance must be positive");
  if (config.lemmas.empty()) throw DomainError("sweep: no lemma selected");
  if (config.alphas.empty() || config.etas.empty()) throw DomainError("sweep: empty alpha/eta grid");
  if (config.variants.empty() &&
      std::find(config.lemmas.begin(), config.lemmas.end(), Lemma::L4) != config.lemmas.end()) {
    throw DomainError("sweep: L4 selected with no variant");
  }
  for (double alpha : config.alphas) {
    const AlphaParam a(alpha);
    for (double eta : config.etas) {
      const EtaParam e(eta);
      for (Lemma lemma : config.lemmas) {
        check_regime(lemma, a, e);
        if ((lemma == Lemma::L3 || lemma == Lemma::L5) && config.family.num_qubits < 4) {
          throw DomainError(to_string(lemma) + " needs at least 4 qubits");
        }
      }
    }
  }
}

std::size_t effective_samples(const SweepConfig& config) {
  return is_random_family(config.family) ? config.samples : std::min<std::size_t>(config.samples, 1);
}

SweepResult sweep(const SweepConfig& config) {
  validate(config);
  const std::size_t samples = effective_samples(config);

  std::vector<std::vector<SweepRow>> per_sample(samples);
  parallel_for(samples, config.workers,
               [&](std::size_t k) { per_sample[k] = run_sample(config, k); });

  SweepResult result;
  SweepSummary& s = result.summary;
  s.samples = samples;
  s.min_margin = std::numeric_limits<double>::infinity();
  s.min_tightening = std::numeric_limits<double>::infinity();
  s.printed_min_margin = std::numeric_limits<double>::infinity();
  for (auto& rows : per_sample) {
    for (SweepRow& row : rows) {
      const MonogamyReport& r = row.report;
      ++s.rows;
      if (!r.asserted()) {
        ++s.printed_rows;
        if (r.condition_met) {
          ++s.printed_condition_met;
          s.printed_min_margin = std::min(s.printed_min_margin, r.margin);
          if (r.violates(config.tolerance)) ++s.printed_violations;
        }
      } else if (r.condition_met) {
        ++s.condition_met;
        s.min_margin = std::min(s.min_margin, r.margin);
        s.min_tightening = std::min(s.min_tightening, r.tightening);
        if (r.violates(config.tolerance)) {
          ++s.violations;
          s.violation_list.push_back({row.sample, r.lemma, r.variant, r.m, r.alpha, r.eta, r.margin});
        }
      }
      result.rows.push_back(std::move(row));
    }
  }
  return result;
}

}  // namespace renyimono
