#pragma once

// Verification campaigns: many sampled global states x an (alpha, eta, lemma)
// grid, aggregated into reports and a summary.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "renyimono/monogamy.hpp"
#include "renyimono/states.hpp"

namespace renyimono {

struct SweepConfig {
  StateFamily family{family::HaarPure{}, 3};
  std::vector<double> alphas;
  std::vector<double> etas;
  std::vector<Lemma> lemmas;
  // Readings of L4 to report; ignored for other lemmas.
  std::vector<Lemma4Variant> variants{Lemma4Variant::ProofConsistent, Lemma4Variant::AsPrinted};
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  double tolerance = kMarginTolerance;
  std::size_t workers = 1;
};

struct SweepRow {
  std::uint64_t seed;
  std::size_t sample;
  std::size_t num_qubits;
  MonogamyReport report;
};

struct SweepViolation {
  std::size_t sample;
  Lemma lemma;
  std::optional<Lemma4Variant> variant;
  std::optional<std::size_t> m;
  double alpha;
  double eta;
  double margin;
};

struct SweepSummary {
  std::size_t samples = 0;
  std::size_t rows = 0;
  std::size_t condition_met = 0;
  // Over condition-met asserted rows; +inf when there are none.
  double min_margin;
  double min_tightening;
  std::size_t violations = 0;
  std::vector<SweepViolation> violation_list;
  // As-printed L4 reading: reported, never asserted.
  std::size_t printed_rows = 0;
  std::size_t printed_condition_met = 0;
  std::size_t printed_violations = 0;
  double printed_min_margin;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  SweepSummary summary;
};

// Rejects, before any work, grids containing an (alpha, eta, lemma) triple
// outside its regime, mixed-state families, too few qubits for a lemma, and
// non-positive tolerances. Throws RegimeError or DomainError.
void validate(const SweepConfig& config);

// Number of distinct global states a config draws: `samples` for random
// families, min(samples, 1) for structured ones.
std::size_t effective_samples(const SweepConfig& config);

// Rows are ordered by sample, then alpha, eta, lemma (config order), then
// L4 variant or split m. Sample k draws from RNG substream (seed, k), so the
// output does not depend on config.workers.
SweepResult sweep(const SweepConfig& config);

}  // namespace renyimono
