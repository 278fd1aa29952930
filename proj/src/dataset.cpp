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

#include "npriv/dataset.hpp"

#include <algorithm>

#include "npriv/errors.hpp"

namespace npriv {

bool domain_is_finite(const Domain& d) { return std::holds_alternative<FiniteRange>(d); }

bool domain_is_empty(const Domain& d) {
  if (domain_is_finite(d)) return std::get<FiniteRange>(d).empty();
  return std::get<IntervalUnion>(d).empty();
}

bool domain_contains(const Domain& d, const Value& v) {
  if (domain_is_finite(d)) return std::get<FiniteRange>(d).contains(v);
  if (!v.is_rational()) return false;
  return std::get<IntervalUnion>(d).contains(v.as_rational());
}

IntervalUnion domain_hull(const Domain& d) {
  if (domain_is_finite(d)) {
    const auto& r = std::get<FiniteRange>(d);
    if (r.empty()) return IntervalUnion();
    return IntervalUnion::single(r.min_rational(), r.max_rational());
  }
  const auto& iv = std::get<IntervalUnion>(d);
  if (iv.empty()) return IntervalUnion();
  return IntervalUnion::single(iv.min(), iv.max());
}

Rational domain_width(const Domain& d) {
  IntervalUnion hull = domain_hull(d);
  if (hull.empty()) throw ArgumentError("empty domain has no width");
  return hull.max() - hull.min();
}

std::string domain_to_string(const Domain& d) {
  if (domain_is_finite(d)) return std::get<FiniteRange>(d).to_string();
  return std::get<IntervalUnion>(d).to_string();
}

QuerySpec QuerySpec::affine(std::vector<Rational> weights, Rational offset) {
  if (weights.empty()) throw ArgumentError("affine query needs at least one weight");
  QuerySpec q;
  q.kind_ = Kind::affine;
  q.weights_ = std::move(weights);
  q.offset_ = std::move(offset);
  return q;
}

QuerySpec QuerySpec::mean() {
  QuerySpec q;
  q.kind_ = Kind::mean;
  return q;
}

QuerySpec QuerySpec::sum() {
  QuerySpec q;
  q.kind_ = Kind::sum;
  return q;
}

QuerySpec QuerySpec::table(TableMap entries) {
  if (entries.empty()) throw ArgumentError("table query needs at least one entry");
  QuerySpec q;
  q.kind_ = Kind::table;
  q.table_ = std::move(entries);
  return q;
}

std::vector<Rational> QuerySpec::weights_for(size_t n) const {
  switch (kind_) {
    case Kind::affine:
      if (weights_.size() != n)
        throw ArgumentError("affine query declares " + std::to_string(weights_.size()) +
                            " weights for " + std::to_string(n) + " individuals");
      return weights_;
    case Kind::mean:
      return std::vector<Rational>(n, Rational(1) / Rational(static_cast<int>(n)));
    case Kind::sum:
      return std::vector<Rational>(n, Rational(1));
    case Kind::table:
      throw ArgumentError("table queries have no affine weights");
  }
  throw InternalError("unreachable query kind");
}

const QuerySpec::TableMap& QuerySpec::table_entries() const {
  if (kind_ != Kind::table) throw ArgumentError("query is not a table");
  return table_;
}

QuerySpec QuerySpec::with_output_bounds(Rational y_min, Rational y_max) const {
  if (y_min > y_max) throw ArgumentError("output bounds must satisfy y_min <= y_max");
  QuerySpec q = *this;
  q.bounds_ = {std::move(y_min), std::move(y_max)};
  return q;
}

namespace {

// Exact image bounds of an affine query over the domain box.
std::pair<Rational, Rational> affine_image_bounds(const std::vector<Domain>& domains,
                                                  const std::vector<Rational>& weights,
                                                  const Rational& offset) {
  Rational lo = offset, hi = offset;
  for (size_t j = 0; j < domains.size(); ++j) {
    IntervalUnion hull = domain_hull(domains[j]);
    Rational a = weights[j] * hull.min();
    Rational b = weights[j] * hull.max();
    lo += std::min(a, b);
    hi += std::max(a, b);
  }
  return {lo, hi};
}

std::pair<Rational, Rational> table_image_bounds(const QuerySpec::TableMap& table) {
  Rational lo = table.begin()->second, hi = lo;
  for (const auto& [key, out] : table) {
    (void)key;
    lo = std::min(lo, out);
    hi = std::max(hi, out);
  }
  return {lo, hi};
}

}  // namespace

DatasetSpec::DatasetSpec(std::vector<Domain> domains, QuerySpec query)
    : domains_(std::move(domains)), query_(std::move(query)) {
  if (domains_.empty()) throw ArgumentError("a dataset needs at least one individual");
  for (size_t j = 0; j < domains_.size(); ++j) {
    if (domain_is_empty(domains_[j]))
      throw ArgumentError("domain of individual " + std::to_string(j + 1) + " is empty");
  }

  std::pair<Rational, Rational> image;
  if (query_.is_affine_kind()) {
    weights_ = query_.weights_for(n());
    for (size_t j = 0; j < domains_.size(); ++j) {
      if (domain_is_finite(domains_[j]) && !std::get<FiniteRange>(domains_[j]).all_rational())
        throw ArgumentError("affine query over symbolic domain of individual " +
                            std::to_string(j + 1));
    }
    image = affine_image_bounds(domains_, weights_, query_.offset());
  } else {
    // Table queries require finite domains and must cover the whole box.
    if (!all_finite())
      throw PreconditionError("table queries require finite domains");
    const auto& table = query_.table_entries();
    for (TupleEnumerator it(domains_); !it.done(); it.advance()) {
      if (table.find(it.value()) == table.end()) {
        std::string tuple = "(";
        for (size_t j = 0; j < it.value().size(); ++j) {
          if (j > 0) tuple += ",";
          tuple += it.value()[j].to_string();
        }
        throw ArgumentError("table query has no entry for input " + tuple + ")");
      }
    }
    image = table_image_bounds(table);
  }

  if (query_.declared_bounds()) {
    const auto& [lo, hi] = *query_.declared_bounds();
    if (image.first < lo || image.second > hi)
      throw ArgumentError("query image [" + to_string(image.first) + "," +
                          to_string(image.second) + "] exceeds declared output bounds [" +
                          to_string(lo) + "," + to_string(hi) + "]");
    bounds_ = {lo, hi};
  } else {
    bounds_ = image;
  }
}

bool DatasetSpec::all_finite() const {
  return std::all_of(domains_.begin(), domains_.end(), domain_is_finite);
}

const std::vector<Rational>& DatasetSpec::weights() const {
  if (!query_.is_affine_kind()) throw ArgumentError("table queries have no affine weights");
  return weights_;
}

bool DatasetSpec::in_domain_box(const std::vector<Value>& x) const {
  if (x.size() != n()) return false;
  for (size_t j = 0; j < n(); ++j)
    if (!domain_contains(domains_[j], x[j])) return false;
  return true;
}

Rational DatasetSpec::evaluate_query(const std::vector<Value>& x) const {
  if (x.size() != n())
    throw DomainError("query input has " + std::to_string(x.size()) +
                      " coordinates, expected " + std::to_string(n()));
  for (size_t j = 0; j < n(); ++j) {
    if (!domain_contains(domains_[j], x[j]))
      throw DomainError("value '" + x[j].to_string() + "' is outside domain " +
                        domain_to_string(domains_[j]) + " of individual " +
                        std::to_string(j + 1));
  }
  if (query_.is_affine_kind()) {
    Rational y = query_.offset();
    for (size_t j = 0; j < n(); ++j) y += weights_[j] * x[j].as_rational();
    return y;
  }
  auto it = query_.table_entries().find(x);
  if (it == query_.table_entries().end())
    throw InternalError("table query missing an in-domain input");  // checked at construction
  return it->second;
}

DatasetSpec substitute(const DatasetSpec& dataset, size_t i,
                       const std::vector<Value>& others) {
  if (i >= dataset.n())
    throw ArgumentError("individual index " + std::to_string(i + 1) + " out of 1.." +
                        std::to_string(dataset.n()));
  if (others.size() != dataset.n() - 1)
    throw ArgumentError("expected " + std::to_string(dataset.n() - 1) +
                        " pinned values, got " + std::to_string(others.size()));
  std::vector<Domain> pinned;
  pinned.reserve(dataset.n());
  size_t k = 0;
  for (size_t j = 0; j < dataset.n(); ++j) {
    if (j == i) {
      pinned.push_back(dataset.domain(j));
      continue;
    }
    const Value& v = others[k++];
    if (!domain_contains(dataset.domain(j), v))
      throw DomainError("pinned value '" + v.to_string() + "' is outside domain " +
                        domain_to_string(dataset.domain(j)) + " of individual " +
                        std::to_string(j + 1));
    pinned.emplace_back(FiniteRange({v}));
  }
  return DatasetSpec(std::move(pinned), dataset.query());
}

std::vector<Value> insert_at(const std::vector<Value>& others, size_t i, Value x_i) {
  std::vector<Value> full;
  full.reserve(others.size() + 1);
  full.insert(full.end(), others.begin(), others.begin() + static_cast<long>(i));
  full.push_back(std::move(x_i));
  full.insert(full.end(), others.begin() + static_cast<long>(i), others.end());
  return full;
}

TupleEnumerator::TupleEnumerator(const std::vector<Domain>& domains) {
  ranges_.reserve(domains.size());
  for (const auto& d : domains) {
    if (!domain_is_finite(d))
      throw PreconditionError("product enumeration requires finite domains; discretize " +
                              domain_to_string(d) + " with grid_sample first");
    ranges_.push_back(std::get<FiniteRange>(d));
  }
  init();
}

TupleEnumerator::TupleEnumerator(std::vector<FiniteRange> ranges)
    : ranges_(std::move(ranges)) {
  init();
}

void TupleEnumerator::init() {
  index_.assign(ranges_.size(), 0);
  for (const auto& r : ranges_) {
    if (r.empty()) {
      done_ = true;
      return;
    }
  }
  current_.reserve(ranges_.size());
  for (const auto& r : ranges_) current_.push_back(r[0]);
}

void TupleEnumerator::advance() {
  if (done_) return;
  for (size_t j = ranges_.size(); j-- > 0;) {
    if (++index_[j] < ranges_[j].size()) {
      current_[j] = ranges_[j][index_[j]];
      return;
    }
    index_[j] = 0;
    current_[j] = ranges_[j][0];
  }
  done_ = true;
}

BigInt product_cardinality(const std::vector<Domain>& domains) {
  BigInt total = 1;
  for (const auto& d : domains) {
    if (!domain_is_finite(d))
      throw PreconditionError("product cardinality requires finite domains; discretize " +
                              domain_to_string(d) + " with grid_sample first");
    total *= static_cast<unsigned long>(std::get<FiniteRange>(d).size());
  }
  return total;
}

}  // namespace npriv
