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

#ifndef NPRIV_JOINT_RELATION_HPP
#define NPRIV_JOINT_RELATION_HPP

#include <utility>
#include <vector>

#include "npriv/finite_range.hpp"
#include "npriv/value.hpp"

namespace npriv {

// The joint range of two discrete uncertain variables: a finite set of (x, y)
// pairs. Marginal ranges are the coordinate projections, so conditional
// ranges are non-empty for every element of either marginal.
class JointRelation {
 public:
  using Pair = std::pair<Value, Value>;

  // Ranges are derived from the pairs.
  static JointRelation from_pairs(std::vector<Pair> pairs);

  // Validates that the projections of `pairs` equal the declared ranges.
  JointRelation(std::vector<Pair> pairs, FiniteRange x_range, FiniteRange y_range);

  const std::vector<Pair>& pairs() const { return pairs_; }
  const FiniteRange& x_range() const { return x_range_; }
  const FiniteRange& y_range() const { return y_range_; }

  // Conditional range of X given Y = y; DomainError if y is not in the Y range.
  FiniteRange x_given_y(const Value& y) const;
  // Conditional range of Y given X = x; DomainError if x is not in the X range.
  FiniteRange y_given_x(const Value& x) const;

  // The same relation with coordinates swapped.
  JointRelation swapped() const;

  // True when every x maps to exactly one y.
  bool deterministic() const;

 private:
  JointRelation() = default;

  std::vector<Pair> pairs_;  // sorted, distinct
  FiniteRange x_range_;
  FiniteRange y_range_;
};

}  // namespace npriv

#endif  // NPRIV_JOINT_RELATION_HPP
