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

#ifndef NPRIV_INTERVAL_UNION_HPP
#define NPRIV_INTERVAL_UNION_HPP

#include <string>
#include <vector>

#include "npriv/finite_range.hpp"
#include "npriv/value.hpp"

namespace npriv {

// A one-dimensional continuous range: a finite union of disjoint closed
// intervals with exact rational endpoints. The representation is canonical:
// sorted, with touching or overlapping intervals merged, so equal sets
// compare equal and the Lebesgue measure is exact.
class IntervalUnion {
 public:
  struct Interval {
    Rational lo;
    Rational hi;  // lo <= hi; lo == hi is a degenerate point
    bool operator==(const Interval& o) const { return lo == o.lo && hi == o.hi; }
  };

  IntervalUnion() = default;  // the empty set
  explicit IntervalUnion(std::vector<Interval> intervals);

  static IntervalUnion single(Rational lo, Rational hi);
  static IntervalUnion point(Rational x) { return single(x, x); }

  const std::vector<Interval>& intervals() const { return intervals_; }
  bool empty() const { return intervals_.empty(); }
  size_t piece_count() const { return intervals_.size(); }
  bool is_single_interval() const { return intervals_.size() == 1; }

  Rational measure() const;
  bool contains(const Rational& x) const;
  Rational min() const;  // ArgumentError on empty
  Rational max() const;

  // Affine images: k*U and U+c, exact.
  IntervalUnion scaled(const Rational& k) const;
  IntervalUnion shifted(const Rational& c) const;

  // {a + b : a in this, b in other}.
  IntervalUnion minkowski_sum(const IntervalUnion& other) const;

  IntervalUnion intersect(const IntervalUnion& other) const;

  std::string to_string() const;

  friend bool operator==(const IntervalUnion& a, const IntervalUnion& b) {
    return a.intervals_ == b.intervals_;
  }
  friend bool operator!=(const IntervalUnion& a, const IntervalUnion& b) { return !(a == b); }

 private:
  void normalize();

  std::vector<Interval> intervals_;  // sorted by lo, pairwise disjoint, non-touching
};

// Samples lo, lo+step, lo+2*step, ... within each interval, plus every
// interval endpoint. Step must be positive.
FiniteRange grid_sample(const IntervalUnion& iv, const Rational& step);

}  // namespace npriv

#endif  // NPRIV_INTERVAL_UNION_HPP
