// Copyright 2026 The npriv Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "npriv/auditor.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "npriv/errors.hpp"
#include "test_util.hpp"

namespace npriv {
namespace {

Rational rat(const std::string& s) { return *parse_rational(s); }

DatasetSpec binary_pair() {
  return DatasetSpec({FiniteRange({Value(0), Value(1)}), FiniteRange({Value(0), Value(1)})},
                     QuerySpec::mean());
}

TEST(AuditTest, BinaryMeanIdentityHasOneBit) {
  AuditReport report = audit(binary_pair(), MechanismSpec::identity());
  EXPECT_EQ(report.mode, AuditReport::Mode::exact_finite);
  EXPECT_EQ(report.max_count, 2u);
  EXPECT_DOUBLE_EQ(report.epsilon_star, 1.0);
  ASSERT_EQ(report.per_individual.size(), 2u);
  EXPECT_EQ(report.per_individual[0].max_count, 2u);
  EXPECT_EQ(report.per_individual[0].argmax_others.size(), 1u);
}

TEST(AuditTest, ConstantMechanismIsFree) {
  AuditReport report = audit(binary_pair(), MechanismSpec::constant(Value::symbol("k")));
  EXPECT_EQ(report.max_count, 1u);
  EXPECT_DOUBLE_EQ(report.epsilon_star, 0.0);
}

TEST(AuditTest, ExactIntervalPathMatchesSpecExample) {
  // n = 2, domains [0,1]^2, mean query, 2-level quantizer: the half-width
  // image straddles at most one boundary.
  DatasetSpec ds({IntervalUnion::single(0, 1), IntervalUnion::single(0, 1)},
                 QuerySpec::mean());
  AuditReport report = audit(ds, MechanismSpec::quantizer(QuantizerSpec(2, 0, 1)));
  EXPECT_EQ(report.mode, AuditReport::Mode::exact_quantizer_affine);
  EXPECT_EQ(report.max_count, 2u);
  EXPECT_DOUBLE_EQ(report.epsilon_star, 1.0);
}

TEST(AuditTest, IdentityOverContinuousDataIsUnbounded) {
  DatasetSpec ds({IntervalUnion::single(0, 1)}, QuerySpec::mean());
  AuditReport report = audit(ds, MechanismSpec::identity());
  EXPECT_TRUE(report.infinite);
  EXPECT_TRUE(std::isinf(report.epsilon_star));
  EXPECT_FALSE(report.note.empty());
}

TEST(AuditTest, WitnessReproducesTheWorstCount) {
  Rng rng(29);
  for (int trial = 0; trial < 60; ++trial) {
    DatasetSpec ds = testing::random_finite_dataset(rng, 3, 4);
    MechanismSpec mech = testing::random_mechanism(rng, ds);
    AuditReport report = audit(ds, mech);
    for (size_t i = 0; i < ds.n(); ++i) {
      const auto& ind = report.per_individual[i];
      if (ds.n() == 1) continue;
      // Re-count the conditional output set at the reported witness.
      std::set<std::string> outputs;
      const auto& di = std::get<FiniteRange>(ds.domain(i));
      for (const auto& xi : di)
        outputs.insert(apply(mech, ds, insert_at(ind.argmax_others, i, xi)).to_string());
      EXPECT_EQ(outputs.size(), ind.max_count);
    }
  }
}

TEST(AuditTest, IntervalWitnessReproducesTheWorstCount) {
  Rng rng(31);
  for (int trial = 0; trial < 60; ++trial) {
    DatasetSpec ds = testing::random_interval_dataset(rng, 3);
    auto [lo, hi] = ds.output_bounds();
    if (lo == hi) continue;
    auto q = static_cast<int64_t>(1 + rng.uniform_index(8));
    MechanismSpec mech = MechanismSpec::quantizer(QuantizerSpec(q, lo, hi));
    AuditReport report = audit(ds, mech);
    ASSERT_EQ(report.mode, AuditReport::Mode::exact_quantizer_affine);
    for (size_t i = 0; i < ds.n() && ds.n() > 1; ++i) {
      const auto& ind = report.per_individual[i];
      // Pinning the others at the witness must reproduce the reported count.
      DatasetSpec pinned = substitute(ds, i, ind.argmax_others);
      AuditReport recount = audit(pinned, mech);
      EXPECT_EQ(recount.per_individual[i].max_count, ind.max_count);
    }
  }
}

TEST(AuditTest, GridNeverExceedsExactOnRandomIntervalInstances) {
  Rng rng(37);
  int checked = 0;
  for (int trial = 0; trial < 50; ++trial) {
    DatasetSpec ds = testing::random_interval_dataset(rng, 3);
    auto [lo, hi] = ds.output_bounds();
    if (lo == hi) continue;
    auto q = static_cast<int64_t>(1 + rng.uniform_index(10));
    MechanismSpec mech = MechanismSpec::quantizer(QuantizerSpec(q, lo, hi));
    AuditReport exact = audit(ds, mech);

    uint64_t previous = 0;
    for (Rational step : {rat("1/4"), rat("1/8"), rat("1/16")}) {
      AuditOptions options;
      options.grid_step = step;
      AuditReport gridded = audit(ds, mech, options);
      EXPECT_TRUE(gridded.lower_bound);
      EXPECT_LE(gridded.max_count, exact.max_count);
      EXPECT_GE(gridded.max_count, previous);  // refinement only adds outputs
      previous = gridded.max_count;
    }
    ++checked;
  }
  EXPECT_GE(checked, 30);
}

TEST(AuditTest, MechanismMustCoverTheQueryImage) {
  DatasetSpec ds({IntervalUnion::single(0, 4)}, QuerySpec::mean());
  MechanismSpec narrow = MechanismSpec::quantizer(QuantizerSpec(4, 0, 1));
  EXPECT_THROW(audit(ds, narrow), DomainError);
}

TEST(AuditLocalTest, SpecExamples) {
  std::vector<Value> octave;
  for (int v = 0; v < 8; ++v) octave.emplace_back(v);
  DatasetSpec ds({FiniteRange(octave), FiniteRange(octave)}, QuerySpec::sum());
  AuditReport identity = audit_local(ds, MechanismSpec::identity());
  EXPECT_DOUBLE_EQ(identity.epsilon_star, 3.0);

  DatasetSpec cont(std::vector<Domain>(2, IntervalUnion::single(0, 1)), QuerySpec::mean());
  AuditReport quantized = audit_local(cont, MechanismSpec::quantizer(QuantizerSpec(4, 0, 1)));
  EXPECT_DOUBLE_EQ(quantized.epsilon_star, 2.0);

  AuditReport constant = audit_local(cont, MechanismSpec::constant(Value(0)));
  EXPECT_DOUBLE_EQ(constant.epsilon_star, 0.0);
}

TEST(HypothesisTest, DistinguishableAndIndistinguishable) {
  DatasetSpec ds = binary_pair();
  HypothesisReport distinct = hypothesis_analysis(ds, MechanismSpec::identity(), 0,
                                                  Value(0), Value(1), {Value(0)});
  EXPECT_TRUE(distinct.distinguishable);
  EXPECT_EQ(distinct.symmetric_difference.size(), 2u);
  EXPECT_DOUBLE_EQ(distinct.bound_bits, 1.0);
  EXPECT_DOUBLE_EQ(distinct.best_test_bits, 1.0);

  HypothesisReport same = hypothesis_analysis(ds, MechanismSpec::constant(Value(9)), 0,
                                              Value(0), Value(1), {Value(0)});
  EXPECT_FALSE(same.distinguishable);
  EXPECT_NE(same.to_text().find("no distinguishing output"), std::string::npos);

  EXPECT_THROW(
      hypothesis_analysis(ds, MechanismSpec::identity(), 0, Value(1), Value(1), {Value(0)}),
      ArgumentError);
}

TEST(HypothesisTest, BoundNeverExceedsTheAuditedBudget) {
  Rng rng(41);
  for (int trial = 0; trial < 300; ++trial) {
    DatasetSpec ds = testing::random_finite_dataset(rng, 3, 4);
    MechanismSpec mech = testing::random_mechanism(rng, ds);
    size_t i = rng.uniform_index(ds.n());
    const auto& di = std::get<FiniteRange>(ds.domain(i));
    if (di.size() < 2) continue;
    size_t a = rng.uniform_index(di.size());
    size_t b = rng.uniform_index(di.size() - 1);
    if (b >= a) ++b;
    HypothesisReport rep = hypothesis_analysis(ds, mech, i, di[a], di[b],
                                               testing::random_others(rng, ds, i));
    double eps = audit(ds, mech).epsilon_star;
    if (rep.distinguishable) {
      EXPECT_LE(rep.best_test_bits, rep.bound_bits + 1e-9);
      EXPECT_LE(rep.bound_bits, eps + 1e-9);
    }
  }
}

TEST(InducedTest, RelationAndChannels) {
  DatasetSpec ds = binary_pair();
  JointRelation rel =
      induced_relation(ds, MechanismSpec::identity(), 0, {Value(1)});
  EXPECT_EQ(rel.x_range().size(), 2u);
  EXPECT_TRUE(rel.deterministic());

  ChannelSpec fixed = induced_channel(ds, MechanismSpec::identity(), 0, {Value(1)});
  EXPECT_EQ(fixed.outputs_for(Value(0)).size(), 1u);

  ChannelSpec uncertain = induced_uncertain_channel(ds, MechanismSpec::identity(), 0);
  EXPECT_EQ(uncertain.outputs_for(Value(0)).size(), 2u);  // both pinnings possible
}

TEST(TheoremOneTest, ConstantIdentityAndQuantizer) {
  // Constant mechanism: every measure collapses to zero.
  DatasetSpec ds = binary_pair();
  InformationChain flat = theorem1_check(ds, MechanismSpec::constant(Value(0)), 0, {Value(0)});
  EXPECT_DOUBLE_EQ(flat.maximin_bits, 0.0);
  EXPECT_DOUBLE_EQ(flat.epsilon_star, 0.0);

  // Identity mechanism with a query injective in x_i: the chain is flat at 2 bits.
  std::vector<Value> four{Value(0), Value(1), Value(2), Value(3)};
  DatasetSpec wide({FiniteRange(four), FiniteRange({Value(0)})}, QuerySpec::sum());
  InformationChain chain = theorem1_check(wide, MechanismSpec::identity(), 0, {Value(0)});
  EXPECT_DOUBLE_EQ(chain.maximin_bits, 2.0);
  EXPECT_DOUBLE_EQ(chain.symmetrized_leakage_bits, 2.0);
  EXPECT_DOUBLE_EQ(chain.output_leakage_bits, 2.0);
  EXPECT_DOUBLE_EQ(chain.epsilon_star, 2.0);
}

TEST(TheoremOneTest, ChainHoldsOnRandomInstances) {
  Rng rng(43);
  for (int trial = 0; trial < 1000; ++trial) {
    DatasetSpec ds = testing::random_finite_dataset(rng, 3, 5);
    MechanismSpec mech = testing::random_mechanism(rng, ds);
    size_t i = rng.uniform_index(ds.n());
    // theorem1_check throws InternalError if the chain is violated.
    InformationChain chain =
        theorem1_check(ds, mech, i, testing::random_others(rng, ds, i));
    EXPECT_GE(chain.maximin_bits, -1e-9);
  }
}

TEST(TheoremFourTest, UniformPriorQuantizerMatchesAnalyticMoments) {
  DatasetSpec ds({IntervalUnion::single(0, 1)}, QuerySpec::mean());
  PriorSpec uniform = PriorSpec::uniform(IntervalUnion::single(0, 1));

  // q = 2, p = 2: conditional variance of a uniform on a half cell is 1/48.
  MomentBoundCheck mse =
      theorem4_check(ds, MechanismSpec::quantizer(QuantizerSpec(2, 0, 1)), 0, uniform, 2,
                     100000, 91);
  EXPECT_NEAR(mse.empirical_moment, 1.0 / 48.0, 0.05 / 48.0);
  EXPECT_NEAR(mse.lower_bound, std::exp2(-9.0), 1e-12);
  EXPECT_TRUE(mse.pass);

  // Constant mechanism, p = 2: the error is the prior variance 1/12.
  MomentBoundCheck flat = theorem4_check(ds, MechanismSpec::constant(Value(0)), 0, uniform,
                                         2, 100000, 92);
  EXPECT_NEAR(flat.empirical_moment, 1.0 / 12.0, 0.05 / 12.0);
  EXPECT_NEAR(flat.lower_bound, 1.0 / 64.0, 1e-12);
  EXPECT_TRUE(flat.pass);

  // q = 4, p = 1: mean absolute deviation of a uniform on a quarter cell.
  MomentBoundCheck mad = theorem4_check(
      ds, MechanismSpec::quantizer(QuantizerSpec(4, 0, 1)), 0, uniform, 1, 100000, 93);
  EXPECT_NEAR(mad.empirical_moment, 1.0 / 16.0, 0.05 / 16.0);
  EXPECT_NEAR(mad.lower_bound, std::exp2(-8.0), 1e-12);
  EXPECT_TRUE(mad.pass);
}

TEST(TheoremFourTest, PreconditionsAreEnforced) {
  DatasetSpec ds({IntervalUnion::single(0, 1)}, QuerySpec::mean());
  PriorSpec uniform = PriorSpec::uniform(IntervalUnion::single(0, 1));
  PriorSpec wrong = PriorSpec::uniform(IntervalUnion::single(0, 2));
  EXPECT_THROW(theorem4_check(ds, MechanismSpec::identity(), 0, wrong, 2, 10, 1),
               ArgumentError);

  // Unpinned second individual.
  DatasetSpec loose({IntervalUnion::single(0, 1), FiniteRange({Value(0), Value(1)})},
                    QuerySpec::mean());
  EXPECT_THROW(theorem4_check(loose, MechanismSpec::identity(), 0, uniform, 2, 10, 1),
               ArgumentError);

  // Compose mechanisms may have disconnected preimages.
  MechanismSpec pair = MechanismSpec::compose(
      {MechanismSpec::quantizer(QuantizerSpec(2, 0, 1)), MechanismSpec::identity()});
  EXPECT_THROW(theorem4_check(ds, pair, 0, uniform, 2, 10, 1), PreconditionError);

  // Finite domains are rejected.
  DatasetSpec finite({FiniteRange({Value(0), Value(1)})}, QuerySpec::mean());
  EXPECT_THROW(theorem4_check(finite, MechanismSpec::identity(), 0, uniform, 2, 10, 1),
               PreconditionError);
}

TEST(TheoremFiveTest, SpecExamplesAndRandomTrials) {
  DatasetSpec ds = binary_pair();
  PriorSpec uniform = PriorSpec::finite(FiniteRange({Value(0), Value(1)}), {0.5, 0.5});

  LeakageBoundCheck constant =
      theorem5_check(ds, MechanismSpec::constant(Value(3)), 0, {Value(0)}, uniform);
  EXPECT_DOUBLE_EQ(constant.maximal_leakage_bits, 0.0);
  EXPECT_DOUBLE_EQ(constant.epsilon_star, 0.0);
  EXPECT_TRUE(constant.pass);

  LeakageBoundCheck identity =
      theorem5_check(ds, MechanismSpec::identity(), 0, {Value(0)}, uniform);
  EXPECT_DOUBLE_EQ(identity.maximal_leakage_bits, 1.0);
  EXPECT_DOUBLE_EQ(identity.epsilon_star, 1.0);
  EXPECT_TRUE(identity.pass);
}

TEST(ReportTest, TextAndCsvShapes) {
  AuditReport report = audit(binary_pair(), MechanismSpec::identity());
  std::string text = report.to_text();
  EXPECT_NE(text.find("epsilon_star = 1.0"), std::string::npos);
  EXPECT_NE(text.find("mode = exact-finite"), std::string::npos);
  std::string csv = report.to_csv();
  EXPECT_NE(csv.find("individual,count,epsilon_i,argmax_others"), std::string::npos);
  EXPECT_NE(csv.find("1,2,1.0,(0)"), std::string::npos);
}

}  // namespace
}  // namespace npriv
