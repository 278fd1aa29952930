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

#include "npriv/joint_relation.hpp"

#include <algorithm>

#include "npriv/errors.hpp"

namespace npriv {

namespace {

void sort_pairs(std::vector<JointRelation::Pair>& pairs) {
  std::sort(pairs.begin(), pairs.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first < b.first;
    return a.second < b.second;
  });
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
}

FiniteRange project(const std::vector<JointRelation::Pair>& pairs, bool first) {
  std::vector<Value> vals;
  vals.reserve(pairs.size());
  for (const auto& p : pairs) vals.push_back(first ? p.first : p.second);
  return FiniteRange(std::move(vals));
}

}  // namespace

JointRelation JointRelation::from_pairs(std::vector<Pair> pairs) {
  if (pairs.empty()) throw ArgumentError("a joint relation needs at least one pair");
  sort_pairs(pairs);
  JointRelation rel;
  rel.x_range_ = project(pairs, true);
  rel.y_range_ = project(pairs, false);
  rel.pairs_ = std::move(pairs);
  return rel;
}

JointRelation::JointRelation(std::vector<Pair> pairs, FiniteRange x_range,
                             FiniteRange y_range) {
  if (pairs.empty()) throw ArgumentError("a joint relation needs at least one pair");
  sort_pairs(pairs);
  if (project(pairs, true) != x_range)
    throw ArgumentError("declared X range does not match the projection of the pairs");
  if (project(pairs, false) != y_range)
    throw ArgumentError("declared Y range does not match the projection of the pairs");
  pairs_ = std::move(pairs);
  x_range_ = std::move(x_range);
  y_range_ = std::move(y_range);
}

FiniteRange JointRelation::x_given_y(const Value& y) const {
  if (!y_range_.contains(y))
    throw DomainError("value '" + y.to_string() + "' is not in the Y range " +
                      y_range_.to_string());
  std::vector<Value> xs;
  for (const auto& p : pairs_)
    if (p.second == y) xs.push_back(p.first);
  return FiniteRange(std::move(xs));
}

FiniteRange JointRelation::y_given_x(const Value& x) const {
  if (!x_range_.contains(x))
    throw DomainError("value '" + x.to_string() + "' is not in the X range " +
                      x_range_.to_string());
  std::vector<Value> ys;
  for (const auto& p : pairs_)
    if (p.first == x) ys.push_back(p.second);
  return FiniteRange(std::move(ys));
}

JointRelation JointRelation::swapped() const {
  std::vector<Pair> flipped;
  flipped.reserve(pairs_.size());
  for (const auto& p : pairs_) flipped.emplace_back(p.second, p.first);
  return from_pairs(std::move(flipped));
}

bool JointRelation::deterministic() const {
  for (const auto& x : x_range_)
    if (y_given_x(x).size() != 1) return false;
  return true;
}

}  // namespace npriv
