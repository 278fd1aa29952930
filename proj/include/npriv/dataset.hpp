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

#ifndef NPRIV_DATASET_HPP
#define NPRIV_DATASET_HPP

#include <map>
#include <optional>
#include <variant>
#include <vector>

#include "npriv/finite_range.hpp"
#include "npriv/interval_union.hpp"
#include "npriv/value.hpp"

namespace npriv {

// A per-individual data domain: a finite set or a continuous interval union.
using Domain = std::variant<FiniteRange, IntervalUnion>;

bool domain_is_finite(const Domain& d);
bool domain_is_empty(const Domain& d);
bool domain_contains(const Domain& d, const Value& v);
// Smallest closed interval hull [min, max]; ArgumentError for symbolic domains.
IntervalUnion domain_hull(const Domain& d);
// Width of the hull (max - min); used by affine sensitivity.
Rational domain_width(const Domain& d);
std::string domain_to_string(const Domain& d);

// A scalar query over the dataset. Affine kinds carry exact rational weights;
// mean and sum resolve their weights once the individual count is known.
// Table queries enumerate an explicit input -> output map.
class QuerySpec {
 public:
  enum class Kind { affine, mean, sum, table };
  using TableMap = std::map<std::vector<Value>, Rational>;

  static QuerySpec affine(std::vector<Rational> weights, Rational offset);
  static QuerySpec mean();
  static QuerySpec sum();
  static QuerySpec table(TableMap entries);

  Kind kind() const { return kind_; }
  bool is_affine_kind() const { return kind_ != Kind::table; }

  // Per-individual weights for n individuals (affine kinds only).
  std::vector<Rational> weights_for(size_t n) const;
  const Rational& offset() const { return offset_; }
  const TableMap& table_entries() const;

  // Declares [y_min, y_max]; checked against the exact image at dataset
  // construction for affine kinds.
  QuerySpec with_output_bounds(Rational y_min, Rational y_max) const;
  const std::optional<std::pair<Rational, Rational>>& declared_bounds() const {
    return bounds_;
  }

 private:
  QuerySpec() = default;

  Kind kind_ = Kind::mean;
  std::vector<Rational> weights_;
  Rational offset_ = 0;
  TableMap table_;
  std::optional<std::pair<Rational, Rational>> bounds_;
};

// n individuals with declared domains plus the query definition.
class DatasetSpec {
 public:
  DatasetSpec(std::vector<Domain> domains, QuerySpec query);

  size_t n() const { return domains_.size(); }
  const Domain& domain(size_t i) const { return domains_[i]; }
  const std::vector<Domain>& domains() const { return domains_; }
  const QuerySpec& query() const { return query_; }

  bool all_finite() const;
  // Resolved affine weights (affine kinds only).
  const std::vector<Rational>& weights() const;

  // [y_min, y_max]: the declared bounds, or the exact image bounds of the
  // domain box for affine kinds / table extremes for table queries.
  std::pair<Rational, Rational> output_bounds() const { return bounds_; }

  // Exact query evaluation; DomainError if x is outside the domain box.
  Rational evaluate_query(const std::vector<Value>& x) const;

  // True when x is inside the domain box (no exception).
  bool in_domain_box(const std::vector<Value>& x) const;

 private:
  std::vector<Domain> domains_;
  QuerySpec query_;
  std::vector<Rational> weights_;  // resolved, affine kinds only
  std::pair<Rational, Rational> bounds_;
};

// Pins every individual except `i` (0-based) to the given values, leaving
// only X_i free. `others` lists the n-1 pinned values in individual order.
DatasetSpec substitute(const DatasetSpec& dataset, size_t i,
                       const std::vector<Value>& others);

// Inserts x_i into the pinned tuple, producing a full n-tuple.
std::vector<Value> insert_at(const std::vector<Value>& others, size_t i, Value x_i);

// Deterministic lexicographic enumeration of the product of finite domains.
// Continuous domains are rejected with a pointer to grid_sample.
class TupleEnumerator {
 public:
  explicit TupleEnumerator(const std::vector<Domain>& domains);
  explicit TupleEnumerator(std::vector<FiniteRange> ranges);

  bool done() const { return done_; }
  const std::vector<Value>& value() const { return current_; }
  void advance();

 private:
  void init();

  std::vector<FiniteRange> ranges_;
  std::vector<size_t> index_;
  std::vector<Value> current_;
  bool done_ = false;
};

// Product of the domain cardinalities; all domains must be finite.
BigInt product_cardinality(const std::vector<Domain>& domains);

}  // namespace npriv

#endif  // NPRIV_DATASET_HPP
