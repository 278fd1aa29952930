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

#include "npriv/finite_range.hpp"

#include <algorithm>

namespace npriv {

FiniteRange::FiniteRange(std::vector<Value> elements) : elements_(std::move(elements)) {
  std::sort(elements_.begin(), elements_.end());
  elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
}

FiniteRange FiniteRange::of_rationals(std::vector<Rational> values) {
  std::vector<Value> elems;
  elems.reserve(values.size());
  for (auto& v : values) elems.emplace_back(std::move(v));
  return FiniteRange(std::move(elems));
}

bool FiniteRange::contains(const Value& v) const {
  return std::binary_search(elements_.begin(), elements_.end(), v);
}

bool FiniteRange::all_rational() const {
  return std::all_of(elements_.begin(), elements_.end(),
                     [](const Value& v) { return v.is_rational(); });
}

Rational FiniteRange::min_rational() const {
  if (empty() || !all_rational())
    throw ArgumentError("range " + to_string() + " has no rational minimum");
  return elements_.front().as_rational();  // rationals sort first
}

Rational FiniteRange::max_rational() const {
  if (empty() || !all_rational())
    throw ArgumentError("range " + to_string() + " has no rational maximum");
  return elements_.back().as_rational();
}

FiniteRange FiniteRange::united_with(const FiniteRange& other) const {
  std::vector<Value> merged;
  merged.reserve(size() + other.size());
  std::merge(begin(), end(), other.begin(), other.end(), std::back_inserter(merged));
  merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
  FiniteRange out;
  out.elements_ = std::move(merged);
  return out;
}

std::string FiniteRange::to_string() const {
  std::string out = "{";
  for (size_t i = 0; i < elements_.size(); ++i) {
    if (i > 0) out += ",";
    out += elements_[i].to_string();
  }
  out += "}";
  return out;
}

}  // namespace npriv
