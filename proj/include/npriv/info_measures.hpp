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

#ifndef NPRIV_INFO_MEASURES_HPP
#define NPRIV_INFO_MEASURES_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "npriv/dataset.hpp"
#include "npriv/finite_range.hpp"
#include "npriv/interval_union.hpp"
#include "npriv/joint_relation.hpp"
#include "npriv/rng.hpp"

namespace npriv {

// A logarithmic quantity. Empty inputs produce a tagged minus-infinity so the
// sentinel can never be mistaken for a computed value.
struct LogResult {
  double value = 0.0;
  bool minus_infinity = false;

  double or_neg_inf() const;
};

// log2 of range cardinality, in bits.
LogResult hartley_entropy(const FiniteRange& r);

// ln of the Lebesgue measure of the range, in nats.
LogResult differential_entropy0(const IntervalUnion& iv);

// Conditioning direction: which coordinate of the relation is conditioned on
// realizations of the other.
enum class Direction { x_given_y, y_given_x };

// Worst-case and best-case log ratios of marginal to conditional cardinality,
// in bits. leakage is the max over conditioning values (L0); information is
// the min (I0). Both directions are reported explicitly since neither measure
// is symmetric.
struct LeakageResult {
  double leakage_bits = 0.0;
  double information_bits = 0.0;
};

LeakageResult nonstochastic_leakage(const JointRelation& rel, Direction dir);

// min of the two directed leakages; symmetric by construction.
double symmetrized_leakage(const JointRelation& rel);

// Partition of the X range into maximal chains of intersecting conditional
// ranges. Blocks are disjoint, cover the range, and are pairwise
// overlap-isolated by construction.
struct OverlapPartition {
  std::vector<FiniteRange> blocks;
};

struct MaximinResult {
  double bits = 0.0;
  OverlapPartition partition;
};

// log2 of the overlap-partition block count. Symmetry of the block count
// across directions is recomputed and enforced.
MaximinResult maximin_information(const JointRelation& rel);

// A memoryless, time-invariant uncertain channel: each input symbol maps to a
// non-empty set of possible outputs.
class ChannelSpec {
 public:
  ChannelSpec(FiniteRange inputs, std::map<Value, FiniteRange> outputs);

  // Cyclic confusability channel on m symbols: input i can produce output i
  // or i+1 (mod m). m = 5 is the pentagon.
  static ChannelSpec cyclic(size_t m);

  const FiniteRange& inputs() const { return inputs_; }
  const FiniteRange& outputs_for(const Value& x) const;

  // Two inputs are confusable when their output sets intersect.
  bool confusable(size_t input_a, size_t input_b) const;

 private:
  FiniteRange inputs_;
  std::map<Value, FiniteRange> outputs_;
  std::vector<std::vector<bool>> confusable_;  // indexed by input order
};

struct ZeroErrorCode {
  std::vector<std::vector<Value>> words;  // lexicographically smallest optimum
  uint64_t size = 0;
  double rate_bits = 0.0;  // log2(size) / k
};

struct ZeroErrorSearchOptions {
  uint64_t node_cap = 1'000'000;  // cap on |inputs|^k
};

// Maximum set of length-k words no two of which are confusable at every
// position simultaneously. Exact branch-and-bound over the k-fold product
// confusability relation; deterministic (maximum cardinality, lexicographic
// tie-break).
ZeroErrorCode zero_error_code_search(const ChannelSpec& channel, size_t k,
                                     const ZeroErrorSearchOptions& options = {});

// A stochastic prior: probability masses on a finite support, or a piecewise
// constant density on an interval union. rho is the infimum of the tabulated
// masses/densities.
class PriorSpec {
 public:
  static PriorSpec finite(FiniteRange support, std::vector<double> masses);
  static PriorSpec uniform(IntervalUnion support);
  static PriorSpec piecewise(IntervalUnion support, std::vector<double> densities);

  bool is_finite() const { return finite_.has_value(); }
  const FiniteRange& finite_support() const;
  const IntervalUnion& continuous_support() const;
  double mass_of(const Value& v) const;  // finite priors
  double rho() const { return rho_; }

  // Draws from a continuous prior by inverse CDF over the pieces.
  double sample(Rng& rng) const;

 private:
  PriorSpec() = default;

  std::optional<FiniteRange> finite_;
  std::vector<double> masses_;
  IntervalUnion support_;
  std::vector<double> densities_;       // one per interval piece
  std::vector<double> cumulative_;      // piece probabilities, cumulative
  double rho_ = 0.0;
};

// Maximal stochastic leakage of a deterministic channel under a prior:
// log2 of the number of distinct outputs reachable from inputs with positive
// mass. The prior support must equal the channel input range and every input
// must map to exactly one output.
double maximal_leakage(const JointRelation& channel, const PriorSpec& prior);

}  // namespace npriv

#endif  // NPRIV_INFO_MEASURES_HPP
