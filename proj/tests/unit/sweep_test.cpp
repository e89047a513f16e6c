#include <gtest/gtest.h>

#include "renyimono/errors.hpp"
#include "renyimono/sweep.hpp"

using namespace renyimono;

namespace {

SweepConfig small_config() {
  SweepConfig c;
  c.alphas = {2.2};
  c.etas = {1.7};
  c.lemmas = {Lemma::L2};
  c.samples = 50;
  c.seed = 3;
  return c;
}

}  // namespace

TEST(Sweep, ZeroSamples) {
  SweepConfig c = small_config();
  c.samples = 0;
  const SweepResult r = sweep(c);
  EXPECT_TRUE(r.rows.empty());
  EXPECT_EQ(r.summary.samples, 0u);
  EXPECT_EQ(r.summary.rows, 0u);
  EXPECT_EQ(r.summary.violations, 0u);
}

TEST(Sweep, HaarThreeQubitsNoViolations) {
  SweepConfig c = small_config();
  c.samples = 1000;
  const SweepResult r = sweep(c);
  EXPECT_EQ(r.summary.samples, 1000u);
  EXPECT_EQ(r.rows.size(), 1000u);
  EXPECT_EQ(r.summary.violations, 0u);
  EXPECT_GE(r.summary.min_tightening, -kTighteningTolerance);
}

TEST(Sweep, WorkerCountDoesNotChangeRows) {
  SweepConfig c = small_config();
  c.lemmas = {Lemma::L2};
  c.alphas = {2, 3};
  const SweepResult one = sweep(c);
  c.workers = 4;
  const SweepResult four = sweep(c);
  ASSERT_EQ(one.rows.size(), four.rows.size());
  for (std::size_t i = 0; i < one.rows.size(); ++i) {
    EXPECT_EQ(one.rows[i].sample, four.rows[i].sample);
    EXPECT_EQ(one.rows[i].report.margin, four.rows[i].report.margin);
  }
}

TEST(Sweep, RowOrder) {
  SweepConfig c;
  c.family = {family::HaarPure{}, 4};
  c.alphas = {1.2};
  c.etas = {2, 3};
  c.lemmas = {Lemma::L4, Lemma::L5};
  c.samples = 2;
  const SweepResult r = sweep(c);
  // per sample: 2 etas x (2 L4 variants + 1 L5 split)
  ASSERT_EQ(r.rows.size(), 12u);
  EXPECT_EQ(r.rows[0].sample, 0u);
  EXPECT_EQ(r.rows[0].report.lemma, Lemma::L4);
  EXPECT_EQ(*r.rows[0].report.variant, Lemma4Variant::ProofConsistent);
  EXPECT_EQ(*r.rows[1].report.variant, Lemma4Variant::AsPrinted);
  EXPECT_EQ(r.rows[2].report.lemma, Lemma::L5);
  EXPECT_EQ(r.rows[2].report.m, 1u);
  EXPECT_EQ(r.rows[3].report.eta, 3.0);
  EXPECT_EQ(r.rows[6].sample, 1u);
  EXPECT_EQ(r.summary.printed_rows, 4u);
}

TEST(Sweep, StructuredFamilyDrawsOnce) {
  SweepConfig c = small_config();
  c.family = {family::W{}, 3};
  c.samples = 10;
  EXPECT_EQ(effective_samples(c), 1u);
  const SweepResult r = sweep(c);
  EXPECT_EQ(r.rows.size(), 1u);
}

TEST(Sweep, ValidationFailsFast) {
  SweepConfig c = small_config();
  c.alphas = {2.2, 1.5};
  EXPECT_THROW(validate(c), RegimeError);
  EXPECT_THROW(sweep(c), RegimeError);

  c = small_config();
  c.lemmas = {Lemma::L3};
  EXPECT_THROW(validate(c), DomainError);  // needs N >= 4

  c = small_config();
  c.family = {family::Werner{0.5}, 2};
  EXPECT_THROW(validate(c), DomainError);

  c = small_config();
  c.tolerance = 0;
  EXPECT_THROW(validate(c), DomainError);

  c = small_config();
  c.etas.clear();
  EXPECT_THROW(validate(c), DomainError);
}
