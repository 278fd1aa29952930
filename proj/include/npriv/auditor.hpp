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

#ifndef NPRIV_AUDITOR_HPP
#define NPRIV_AUDITOR_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "npriv/dataset.hpp"
#include "npriv/info_measures.hpp"
#include "npriv/mechanisms.hpp"
#include "npriv/value.hpp"

namespace npriv {

// Worst case for one individual: the largest conditional output-range
// cardinality over all values of the other individuals, with a witness.
struct IndividualAudit {
  uint64_t max_count = 0;
  bool infinite = false;  // identity mechanism over continuous data
  std::vector<Value> argmax_others;
};

// Exact privacy budget of a deterministic mechanism: epsilon_star is log2 of
// the largest conditional output count across individuals.
struct AuditReport {
  enum class Mode { exact_finite, exact_quantizer_affine, grid };

  std::vector<IndividualAudit> per_individual;
  uint64_t max_count = 0;
  bool infinite = false;
  double epsilon_star = 0.0;
  Mode mode = Mode::exact_finite;
  std::optional<Rational> grid_step;
  bool lower_bound = false;  // grid audits can only miss outputs
  std::string note;

  std::string mode_name() const;
  // Structured text record, one key per line.
  std::string to_text() const;
  // CSV rows "individual,count,epsilon_i,argmax_others" with a header.
  std::string to_csv() const;
};

struct AuditOptions {
  // Discretization step for continuous domains; selects the grid mode.
  std::optional<Rational> grid_step;
  // Cap on worst-case alignment candidates in the exact continuous path.
  uint64_t candidate_cap = 500'000;
};

// Worst-case conditional output counts per Definition 1. Finite domains are
// enumerated exactly; affine queries over continuous domains are audited
// exactly through interval images; a supplied grid step forces the
// (lower-bound) grid mode.
AuditReport audit(const DatasetSpec& dataset, const MechanismSpec& mech,
                  const AuditOptions& options = {});

// Local variant: each individual's datum is released through the mechanism
// directly (coordinate-projection queries).
AuditReport audit_local(const DatasetSpec& dataset, const MechanismSpec& mech,
                        const AuditOptions& options = {});

// Outcome of the two-point distinguishing game for individual i: output
// ranges under each hypothesis, their symmetric difference, and the
// performance of the optimal test (accept where the hypothesis is uniquely
// determined).
struct HypothesisReport {
  FiniteRange y_given_p0;
  FiniteRange y_given_p1;
  FiniteRange symmetric_difference;
  bool distinguishable = false;  // false: no distinguishing output exists
  double bound_bits = 0.0;       // log2 |symmetric difference|
  double best_test_bits = 0.0;

  std::string to_text() const;
  std::string to_csv() const;
};

HypothesisReport hypothesis_analysis(const DatasetSpec& dataset, const MechanismSpec& mech,
                                     size_t i, const Value& x_a, const Value& x_b,
                                     const std::vector<Value>& others);

// The relation between X_i and Y when all other individuals are pinned.
JointRelation induced_relation(const DatasetSpec& dataset, const MechanismSpec& mech,
                               size_t i, const std::vector<Value>& others,
                               const std::optional<Rational>& grid_step = std::nullopt);

// Deterministic channel x_i -> y with the others pinned.
ChannelSpec induced_channel(const DatasetSpec& dataset, const MechanismSpec& mech,
                            size_t i, const std::vector<Value>& others,
                            const std::optional<Rational>& grid_step = std::nullopt);

// Uncertain channel whose output set per x_i collects the outputs over every
// assignment of the other individuals (finite domains).
ChannelSpec induced_uncertain_channel(const DatasetSpec& dataset,
                                      const MechanismSpec& mech, size_t i);

// Information-measure chain for one pinning, checked against the audited
// budget: 0 <= I* <= L0s <= L0(Y;X_i) <= epsilon_star.
struct InformationChain {
  double maximin_bits = 0.0;
  double symmetrized_leakage_bits = 0.0;
  double output_leakage_bits = 0.0;  // L0(Y; X_i)
  double epsilon_star = 0.0;
};

InformationChain theorem1_check(const DatasetSpec& dataset, const MechanismSpec& mech,
                                size_t i, const std::vector<Value>& others,
                                const std::optional<Rational>& grid_step = std::nullopt);

// Monte Carlo check of the estimation-error floor for an adversary with a
// stochastic prior on X_i and every other individual pinned.
struct MomentBoundCheck {
  double empirical_moment = 0.0;
  double lower_bound = 0.0;
  double standard_error = 0.0;
  double epsilon_star = 0.0;
  uint64_t trials = 0;
  unsigned moment_order = 0;
  bool pass = false;
  bool rho_zero = false;  // bound degenerates to 0; passes trivially

  std::string to_text() const;
};

MomentBoundCheck theorem4_check(const DatasetSpec& dataset, const MechanismSpec& mech,
                                size_t i, const PriorSpec& prior, unsigned moment_order,
                                uint64_t trials, uint64_t seed);

// Maximal-leakage cross-check on the induced deterministic channel.
struct LeakageBoundCheck {
  double maximal_leakage_bits = 0.0;
  double epsilon_star = 0.0;
  bool pass = false;
};

LeakageBoundCheck theorem5_check(const DatasetSpec& dataset, const MechanismSpec& mech,
                                 size_t i, const std::vector<Value>& others,
                                 const PriorSpec& prior,
                                 const std::optional<Rational>& grid_step = std::nullopt);

}  // namespace npriv

#endif  // NPRIV_AUDITOR_HPP
