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

#include "npriv/interval_union.hpp"

#include <algorithm>

#include "npriv/errors.hpp"

namespace npriv {

IntervalUnion::IntervalUnion(std::vector<Interval> intervals)
    : intervals_(std::move(intervals)) {
  for (const auto& iv : intervals_) {
    if (iv.lo > iv.hi)
      throw ArgumentError("interval [" + npriv::to_string(iv.lo) + "," +
                          npriv::to_string(iv.hi) + "] has lo > hi");
  }
  normalize();
}

IntervalUnion IntervalUnion::single(Rational lo, Rational hi) {
  return IntervalUnion({Interval{std::move(lo), std::move(hi)}});
}

void IntervalUnion::normalize() {
  if (intervals_.empty()) return;
  std::sort(intervals_.begin(), intervals_.end(),
            [](const Interval& a, const Interval& b) {
              return a.lo != b.lo ? a.lo < b.lo : a.hi < b.hi;
            });
  std::vector<Interval> merged;
  merged.push_back(intervals_.front());
  for (size_t i = 1; i < intervals_.size(); ++i) {
    Interval& last = merged.back();
    if (intervals_[i].lo <= last.hi) {
      if (intervals_[i].hi > last.hi) last.hi = intervals_[i].hi;
    } else {
      merged.push_back(intervals_[i]);
    }
  }
  intervals_ = std::move(merged);
}

Rational IntervalUnion::measure() const {
  Rational total = 0;
  for (const auto& iv : intervals_) total += iv.hi - iv.lo;
  return total;
}

bool IntervalUnion::contains(const Rational& x) const {
  for (const auto& iv : intervals_) {
    if (x < iv.lo) return false;
    if (x <= iv.hi) return true;
  }
  return false;
}

Rational IntervalUnion::min() const {
  if (empty()) throw ArgumentError("empty interval union has no minimum");
  return intervals_.front().lo;
}

Rational IntervalUnion::max() const {
  if (empty()) throw ArgumentError("empty interval union has no maximum");
  return intervals_.back().hi;
}

IntervalUnion IntervalUnion::scaled(const Rational& k) const {
  std::vector<Interval> out;
  out.reserve(intervals_.size());
  for (const auto& iv : intervals_) {
    Rational a = iv.lo * k, b = iv.hi * k;
    if (a <= b)
      out.push_back({a, b});
    else
      out.push_back({b, a});
  }
  return IntervalUnion(std::move(out));
}

IntervalUnion IntervalUnion::shifted(const Rational& c) const {
  std::vector<Interval> out;
  out.reserve(intervals_.size());
  for (const auto& iv : intervals_) out.push_back({iv.lo + c, iv.hi + c});
  return IntervalUnion(std::move(out));
}

IntervalUnion IntervalUnion::minkowski_sum(const IntervalUnion& other) const {
  if (empty() || other.empty()) return IntervalUnion();
  std::vector<Interval> out;
  out.reserve(intervals_.size() * other.intervals_.size());
  for (const auto& a : intervals_)
    for (const auto& b : other.intervals_) out.push_back({a.lo + b.lo, a.hi + b.hi});
  return IntervalUnion(std::move(out));
}

IntervalUnion IntervalUnion::intersect(const IntervalUnion& other) const {
  std::vector<Interval> out;
  size_t a = 0, b = 0;
  while (a < intervals_.size() && b < other.intervals_.size()) {
    const Interval& ia = intervals_[a];
    const Interval& ib = other.intervals_[b];
    Rational lo = std::max(ia.lo, ib.lo);
    Rational hi = std::min(ia.hi, ib.hi);
    if (lo <= hi) out.push_back({lo, hi});
    if (ia.hi < ib.hi)
      ++a;
    else
      ++b;
  }
  return IntervalUnion(std::move(out));
}

std::string IntervalUnion::to_string() const {
  if (empty()) return "{}";
  std::string out;
  for (size_t i = 0; i < intervals_.size(); ++i) {
    if (i > 0) out += " U ";
    out += "[" + npriv::to_string(intervals_[i].lo) + "," +
           npriv::to_string(intervals_[i].hi) + "]";
  }
  return out;
}

FiniteRange grid_sample(const IntervalUnion& iv, const Rational& step) {
  if (step <= 0) throw ArgumentError("grid step must be positive, got " + to_string(step));
  std::vector<Value> points;
  for (const auto& piece : iv.intervals()) {
    for (Rational x = piece.lo; x <= piece.hi; x += step) points.emplace_back(x);
    points.emplace_back(piece.lo);
    points.emplace_back(piece.hi);
  }
  return FiniteRange(std::move(points));
}

}  // namespace npriv
