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

#ifndef NPRIV_FINITE_RANGE_HPP
#define NPRIV_FINITE_RANGE_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "npriv/value.hpp"

namespace npriv {

// The marginal range of a discrete uncertain variable: an ordered set of
// distinct values. Construction sorts and deduplicates, so iteration order is
// canonical and all downstream counting is reproducible.
class FiniteRange {
 public:
  FiniteRange() = default;
  explicit FiniteRange(std::vector<Value> elements);

  static FiniteRange of_rationals(std::vector<Rational> values);

  size_t size() const { return elements_.size(); }
  bool empty() const { return elements_.empty(); }
  bool contains(const Value& v) const;
  const Value& operator[](size_t i) const { return elements_[i]; }

  const std::vector<Value>& elements() const { return elements_; }
  auto begin() const { return elements_.begin(); }
  auto end() const { return elements_.end(); }

  // True when every element is rational.
  bool all_rational() const;
  // Extreme elements of an all-rational range; ArgumentError otherwise.
  Rational min_rational() const;
  Rational max_rational() const;

  // Set union; inputs stay canonical so the result is canonical.
  FiniteRange united_with(const FiniteRange& other) const;

  std::string to_string() const;

  friend bool operator==(const FiniteRange& a, const FiniteRange& b) {
    return a.elements_ == b.elements_;
  }
  friend bool operator!=(const FiniteRange& a, const FiniteRange& b) { return !(a == b); }
  friend bool operator<(const FiniteRange& a, const FiniteRange& b) {
    return a.elements_ < b.elements_;
  }

 private:
  std::vector<Value> elements_;  // sorted, distinct
};

}  // namespace npriv

#endif  // NPRIV_FINITE_RANGE_HPP
