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

#include "npriv/mechanisms.hpp"

#include <algorithm>
#include <cmath>

#include "npriv/errors.hpp"

namespace npriv {

QuantizerSpec::QuantizerSpec(int64_t q, Rational x_min, Rational x_max)
    : q_(q), x_min_(std::move(x_min)), x_max_(std::move(x_max)) {
  if (q_ < 1) throw ArgumentError("quantizer needs at least one level");
  if (x_min_ >= x_max_)
    throw ArgumentError("quantizer range [" + to_string(x_min_) + "," + to_string(x_max_) +
                        "] must have x_min < x_max");
  Rational w = cell_width();
  symbols_.reserve(static_cast<size_t>(q_));
  for (int64_t i = 0; i < q_; ++i)
    symbols_.emplace_back(Rational(x_min_ + w * i + w / 2));
}

QuantizerSpec::QuantizerSpec(int64_t q, Rational x_min, Rational x_max,
                             std::vector<Value> symbols)
    : QuantizerSpec(q, std::move(x_min), std::move(x_max)) {
  if (symbols.size() != static_cast<size_t>(q_))
    throw ArgumentError("quantizer with " + std::to_string(q_) + " levels got " +
                        std::to_string(symbols.size()) + " symbols");
  std::vector<Value> sorted = symbols;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw ArgumentError("quantizer symbols must be distinct");
  symbols_ = std::move(symbols);
}

int64_t QuantizerSpec::cell_index(const Rational& x) const {
  if (x < x_min_ || x > x_max_)
    throw DomainError("value " + to_string(x) + " is outside the quantizer range [" +
                      to_string(x_min_) + "," + to_string(x_max_) + "]");
  if (x == x_max_) return q_ - 1;
  Rational t = (x - x_min_) * q_ / (x_max_ - x_min_);
  BigInt idx = numerator(t) / denominator(t);  // t >= 0, truncation == floor
  return idx.convert_to<int64_t>();
}

int64_t QuantizerSpec::cell_index_clamped(double x) const {
  double lo = to_double(x_min_), hi = to_double(x_max_);
  double t = (x - lo) / (hi - lo) * static_cast<double>(q_);
  auto idx = static_cast<int64_t>(std::floor(t));
  return std::clamp<int64_t>(idx, 0, q_ - 1);
}

double QuantizerSpec::midpoint(int64_t cell) const {
  double w = to_double(cell_width());
  return to_double(x_min_) + (static_cast<double>(cell) + 0.5) * w;
}

struct MechanismSpec::Node {
  Kind kind;
  Value constant;
  std::optional<QuantizerSpec> quant;
  std::vector<MechanismSpec> children;
  std::optional<MechanismSpec> inner;
  PostprocessMap relabel;
};

MechanismSpec MechanismSpec::identity() {
  auto node = std::make_shared<Node>();
  node->kind = Kind::identity;
  return MechanismSpec(std::move(node));
}

MechanismSpec MechanismSpec::constant(Value c) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::constant;
  node->constant = std::move(c);
  return MechanismSpec(std::move(node));
}

MechanismSpec MechanismSpec::quantizer(QuantizerSpec spec) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::quantizer;
  node->quant = std::move(spec);
  return MechanismSpec(std::move(node));
}

MechanismSpec MechanismSpec::compose(std::vector<MechanismSpec> children) {
  if (children.size() < 2)
    throw ArgumentError("compose needs at least two sub-mechanisms");
  auto node = std::make_shared<Node>();
  node->kind = Kind::compose;
  node->children = std::move(children);
  return MechanismSpec(std::move(node));
}

MechanismSpec MechanismSpec::postprocess(MechanismSpec inner, PostprocessMap relabel) {
  if (relabel.empty()) throw ArgumentError("postprocess map is empty");
  if (auto outputs = inner.finite_outputs()) {
    for (const auto& y : *outputs) {
      if (relabel.find(y) == relabel.end())
        throw ArgumentError("postprocess map has no entry for inner output '" +
                            y.to_string() + "'");
    }
  }
  auto node = std::make_shared<Node>();
  node->kind = Kind::postprocess;
  node->inner = std::move(inner);
  node->relabel = std::move(relabel);
  return MechanismSpec(std::move(node));
}

MechanismSpec::Kind MechanismSpec::kind() const { return node_->kind; }

const Value& MechanismSpec::constant_value() const {
  if (kind() != Kind::constant) throw ArgumentError("mechanism is not a constant");
  return node_->constant;
}

const QuantizerSpec& MechanismSpec::quantizer_spec() const {
  if (kind() != Kind::quantizer) throw ArgumentError("mechanism is not a quantizer");
  return *node_->quant;
}

const std::vector<MechanismSpec>& MechanismSpec::children() const {
  if (kind() != Kind::compose) throw ArgumentError("mechanism is not a composition");
  return node_->children;
}

const MechanismSpec& MechanismSpec::inner() const {
  if (kind() != Kind::postprocess) throw ArgumentError("mechanism is not a postprocess");
  return *node_->inner;
}

const MechanismSpec::PostprocessMap& MechanismSpec::postprocess_map() const {
  if (kind() != Kind::postprocess) throw ArgumentError("mechanism is not a postprocess");
  return node_->relabel;
}

Value MechanismSpec::apply_to_output(const Rational& y) const {
  switch (kind()) {
    case Kind::identity:
      return Value(y);
    case Kind::constant:
      return node_->constant;
    case Kind::quantizer:
      return node_->quant->quantize(y);
    case Kind::compose: {
      Value::Tuple parts;
      parts.reserve(node_->children.size());
      for (const auto& child : node_->children) parts.push_back(child.apply_to_output(y));
      return Value::tuple(std::move(parts));
    }
    case Kind::postprocess: {
      Value inner_out = node_->inner->apply_to_output(y);
      auto it = node_->relabel.find(inner_out);
      if (it == node_->relabel.end())
        throw DomainError("postprocess map has no entry for inner output '" +
                          inner_out.to_string() + "'");
      return it->second;
    }
  }
  throw InternalError("unreachable mechanism kind");
}

std::optional<FiniteRange> MechanismSpec::finite_outputs() const {
  switch (kind()) {
    case Kind::identity:
      return std::nullopt;
    case Kind::constant:
      return FiniteRange({node_->constant});
    case Kind::quantizer:
      return FiniteRange(node_->quant->symbols());
    case Kind::compose: {
      std::vector<FiniteRange> per_child;
      for (const auto& child : node_->children) {
        auto outs = child.finite_outputs();
        if (!outs) return std::nullopt;
        per_child.push_back(std::move(*outs));
      }
      std::vector<Value> tuples;
      for (TupleEnumerator it(per_child); !it.done(); it.advance())
        tuples.push_back(Value::tuple(it.value()));
      return FiniteRange(std::move(tuples));
    }
    case Kind::postprocess: {
      auto outs = node_->inner->finite_outputs();
      if (!outs) return std::nullopt;
      std::vector<Value> image;
      for (const auto& y : *outs) image.push_back(node_->relabel.at(y));
      return FiniteRange(std::move(image));
    }
  }
  throw InternalError("unreachable mechanism kind");
}

std::string MechanismSpec::to_string() const {
  switch (kind()) {
    case Kind::identity:
      return "identity";
    case Kind::constant:
      return "constant:" + node_->constant.to_string();
    case Kind::quantizer:
      return "quantizer:" + std::to_string(node_->quant->q()) + ":" +
             npriv::to_string(node_->quant->x_min()) + ":" +
             npriv::to_string(node_->quant->x_max());
    case Kind::compose: {
      std::string out = "compose(";
      for (size_t i = 0; i < node_->children.size(); ++i) {
        if (i > 0) out += "|";
        out += node_->children[i].to_string();
      }
      return out + ")";
    }
    case Kind::postprocess:
      return "postprocess(" + node_->inner->to_string() + ")";
  }
  throw InternalError("unreachable mechanism kind");
}

Value apply(const MechanismSpec& mech, const DatasetSpec& dataset,
            const std::vector<Value>& x) {
  return mech.apply_to_output(dataset.evaluate_query(x));
}

std::string SensitivityResult::method_name() const {
  switch (method) {
    case Method::exact_affine:
      return "exact-affine";
    case Method::exact_enumeration:
      return "exact-enumeration";
    case Method::grid:
      return "grid(" + to_string(grid_step.value()) + ")";
  }
  throw InternalError("unreachable sensitivity method");
}

namespace {

// Exhaustive per-individual worst-case spread over a finite domain box.
Rational enumerated_sensitivity(const DatasetSpec& dataset) {
  Rational worst = 0;
  for (size_t i = 0; i < dataset.n(); ++i) {
    std::vector<Domain> others;
    for (size_t j = 0; j < dataset.n(); ++j)
      if (j != i) others.push_back(dataset.domain(j));
    const auto& di = std::get<FiniteRange>(dataset.domain(i));
    if (others.empty()) {
      Rational lo, hi;
      bool first = true;
      for (const auto& xi : di) {
        Rational y = dataset.evaluate_query({xi});
        if (first) {
          lo = hi = y;
          first = false;
        } else {
          lo = std::min(lo, y);
          hi = std::max(hi, y);
        }
      }
      worst = std::max(worst, hi - lo);
      continue;
    }
    for (TupleEnumerator it(others); !it.done(); it.advance()) {
      Rational lo, hi;
      bool first = true;
      for (const auto& xi : di) {
        Rational y = dataset.evaluate_query(insert_at(it.value(), i, xi));
        if (first) {
          lo = hi = y;
          first = false;
        } else {
          lo = std::min(lo, y);
          hi = std::max(hi, y);
        }
      }
      worst = std::max(worst, hi - lo);
    }
  }
  return worst;
}

}  // namespace

SensitivityResult sensitivity(const DatasetSpec& dataset) {
  SensitivityResult out;
  if (dataset.query().is_affine_kind()) {
    const auto& w = dataset.weights();
    Rational best = 0;
    for (size_t i = 0; i < dataset.n(); ++i) {
      Rational s = abs(w[i]) * domain_width(dataset.domain(i));
      best = std::max(best, s);
    }
    out.value = best;
    out.method = SensitivityResult::Method::exact_affine;
    return out;
  }
  // Table queries are finite by construction.
  out.value = enumerated_sensitivity(dataset);
  out.method = SensitivityResult::Method::exact_enumeration;
  return out;
}

SensitivityResult sensitivity_on_grid(const DatasetSpec& dataset, const Rational& step) {
  bool discretized = false;
  std::vector<Domain> gridded;
  gridded.reserve(dataset.n());
  for (const auto& d : dataset.domains()) {
    if (domain_is_finite(d)) {
      gridded.push_back(d);
    } else {
      gridded.emplace_back(grid_sample(std::get<IntervalUnion>(d), step));
      discretized = true;
    }
  }
  DatasetSpec on_grid(std::move(gridded), dataset.query());
  SensitivityResult out;
  out.value = enumerated_sensitivity(on_grid);
  out.method = SensitivityResult::Method::grid;
  out.grid_step = step;
  out.lower_bound = discretized;
  return out;
}

SynthesisResult synthesize_from_sensitivity(double epsilon_bits, Rational y_min,
                                            Rational y_max, SensitivityResult sens,
                                            const SynthesisOptions& options) {
  if (epsilon_bits <= 0.0) throw ArgumentError("privacy budget must be positive");
  if (y_min >= y_max) throw ArgumentError("output bounds must satisfy y_min < y_max");
  if (sens.value < 0) throw ArgumentError("sensitivity cannot be negative");

  SynthesisResult result{QuantizerSpec(1, y_min, y_max), 1, sens, false, false};

  if (sens.value == 0) {
    result.q = options.q_cap;
    result.insensitive_query = true;
  } else {
    // Allowed output count per individual.
    auto allowed = static_cast<int64_t>(std::floor(std::exp2(epsilon_bits) + 1e-9));
    // Largest q with q * S / (y_max - y_min) strictly below `allowed`: an
    // image of length S then meets at most floor(qS/range) + 1 <= allowed
    // cells regardless of alignment.
    Rational threshold = Rational(allowed) * (y_max - y_min) / sens.value;
    BigInt q_big = numerator(threshold) / denominator(threshold);
    if (Rational(q_big) == threshold) q_big -= 1;
    if (q_big > options.q_cap) q_big = options.q_cap;
    if (q_big < 1) q_big = 1;
    result.q = q_big.convert_to<int64_t>();
    if (sens.lower_bound && options.safety_factor > 1.0) {
      auto derated = static_cast<int64_t>(
          std::floor(static_cast<double>(result.q) / options.safety_factor));
      result.q = std::max<int64_t>(1, derated);
      result.derated = true;
    }
  }
  result.quantizer = QuantizerSpec(result.q, std::move(y_min), std::move(y_max));
  return result;
}

SynthesisResult synthesize_quantizer(const DatasetSpec& dataset, double epsilon_bits,
                                     const SynthesisOptions& options) {
  if (!dataset.query().is_affine_kind())
    throw ArgumentError(
        "quantizer synthesis requires an affine-kind query (table queries may have "
        "disconnected per-individual images; audit them directly)");
  auto [y_min, y_max] = dataset.output_bounds();
  if (y_min == y_max) {
    // Degenerate image: the query is constant over the whole box.
    SensitivityResult sens;
    sens.value = 0;
    sens.method = SensitivityResult::Method::exact_affine;
    return synthesize_from_sensitivity(epsilon_bits, y_min, y_min + 1, sens, options);
  }
  return synthesize_from_sensitivity(epsilon_bits, std::move(y_min), std::move(y_max),
                                     sensitivity(dataset), options);
}

double compose_budget(double eps1, double eps2) {
  if (eps1 < 0.0 || eps2 < 0.0) throw ArgumentError("privacy budgets cannot be negative");
  return eps1 + eps2;
}

}  // namespace npriv
