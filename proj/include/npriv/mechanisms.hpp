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

#ifndef NPRIV_MECHANISMS_HPP
#define NPRIV_MECHANISMS_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "npriv/dataset.hpp"
#include "npriv/value.hpp"

namespace npriv {

// A q-level linear quantizer over [x_min, x_max]: q equal-width cells, each
// half-open except the last, which is closed. Default symbols are the exact
// cell midpoints so outputs stay numeric and inside the reported range.
class QuantizerSpec {
 public:
  QuantizerSpec(int64_t q, Rational x_min, Rational x_max);
  QuantizerSpec(int64_t q, Rational x_min, Rational x_max, std::vector<Value> symbols);

  int64_t q() const { return q_; }
  const Rational& x_min() const { return x_min_; }
  const Rational& x_max() const { return x_max_; }
  Rational cell_width() const { return (x_max_ - x_min_) / q_; }
  const std::vector<Value>& symbols() const { return symbols_; }
  const Value& symbol(int64_t cell) const { return symbols_[static_cast<size_t>(cell)]; }

  // Cell containing x (0-based); x == x_max lands in the last cell.
  // DomainError outside [x_min, x_max], carrying x and the bounds.
  int64_t cell_index(const Rational& x) const;
  const Value& quantize(const Rational& x) const { return symbol(cell_index(x)); }

  // Floating-point path for simulations; clamps rounding spill at the edges.
  int64_t cell_index_clamped(double x) const;
  double midpoint(int64_t cell) const;

 private:
  int64_t q_;
  Rational x_min_, x_max_;
  std::vector<Value> symbols_;
};

// A deterministic output map applied to the query value: identity, a
// constant, a quantizer, a tuple of sub-mechanisms sharing the same query
// value, or a finite relabeling of another mechanism's outputs.
class MechanismSpec {
 public:
  enum class Kind { identity, constant, quantizer, compose, postprocess };
  using PostprocessMap = std::map<Value, Value>;

  static MechanismSpec identity();
  static MechanismSpec constant(Value c);
  static MechanismSpec quantizer(QuantizerSpec spec);
  static MechanismSpec compose(std::vector<MechanismSpec> children);
  static MechanismSpec postprocess(MechanismSpec inner, PostprocessMap relabel);

  Kind kind() const;
  const Value& constant_value() const;
  const QuantizerSpec& quantizer_spec() const;
  const std::vector<MechanismSpec>& children() const;
  const MechanismSpec& inner() const;
  const PostprocessMap& postprocess_map() const;

  // The mechanism alone, applied to a query value.
  Value apply_to_output(const Rational& y) const;

  // Output alphabet when enumerable (identity has none).
  std::optional<FiniteRange> finite_outputs() const;

  std::string to_string() const;

 private:
  struct Node;
  explicit MechanismSpec(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

// Y(omega) = M(f(X(omega))); validates x against the domain box.
Value apply(const MechanismSpec& mech, const DatasetSpec& dataset,
            const std::vector<Value>& x);

// Largest change of the query when one individual's datum varies with all
// others held fixed.
struct SensitivityResult {
  enum class Method { exact_affine, exact_enumeration, grid };

  Rational value;
  Method method = Method::exact_affine;
  std::optional<Rational> grid_step;
  bool lower_bound = false;  // grid search can only under-estimate a supremum

  std::string method_name() const;
};

// Exact: closed form for affine kinds, exhaustive enumeration for finite
// table queries.
SensitivityResult sensitivity(const DatasetSpec& dataset);
// Grid search after discretizing continuous domains; flagged as a lower
// bound whenever any domain was actually discretized.
SensitivityResult sensitivity_on_grid(const DatasetSpec& dataset, const Rational& step);

struct SynthesisOptions {
  int64_t q_cap = int64_t{1} << 20;  // cap when the query is insensitive
  double safety_factor = 2.0;        // derating for lower-bound sensitivities
};

struct SynthesisResult {
  QuantizerSpec quantizer;
  int64_t q = 1;
  SensitivityResult sensitivity;
  bool insensitive_query = false;  // S(f) = 0; q capped
  bool derated = false;            // safety factor applied to a lower-bound S
};

// Picks the largest level count q such that a q-level quantizer over the
// output bounds keeps every per-individual output set within 2^epsilon
// values: any image of length S(f) meets at most floor(q*S/range)+1 cells, so
// q is the largest integer with q*S/range < floor(2^epsilon). Table queries
// are rejected (their per-individual images need not be connected); audit
// them directly instead.
SynthesisResult synthesize_quantizer(const DatasetSpec& dataset, double epsilon_bits,
                                     const SynthesisOptions& options = {});

// Same selection rule from an explicitly supplied sensitivity.
SynthesisResult synthesize_from_sensitivity(double epsilon_bits, Rational y_min,
                                            Rational y_max, SensitivityResult sens,
                                            const SynthesisOptions& options = {});

// Budget of a pair of mechanisms reporting on the same dataset.
double compose_budget(double eps1, double eps2);

}  // namespace npriv

#endif  // NPRIV_MECHANISMS_HPP
