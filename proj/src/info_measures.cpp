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

#include "npriv/info_measures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "npriv/errors.hpp"

namespace npriv {

double LogResult::or_neg_inf() const {
  return minus_infinity ? -std::numeric_limits<double>::infinity() : value;
}

LogResult hartley_entropy(const FiniteRange& r) {
  if (r.empty()) return {0.0, true};
  return {std::log2(static_cast<double>(r.size())), false};
}

LogResult differential_entropy0(const IntervalUnion& iv) {
  Rational m = iv.measure();
  if (m == 0) return {0.0, true};
  return {std::log(to_double(m)), false};
}

namespace {

// Weighted quick-union with path compression.
class UnionFind {
 public:
  explicit UnionFind(size_t n) : parent_(n), size_(n, 1), count_(n) {
    std::iota(parent_.begin(), parent_.end(), size_t{0});
  }

  size_t find(size_t p) {
    size_t root = p;
    while (root != parent_[root]) root = parent_[root];
    while (p != root) {
      size_t next = parent_[p];
      parent_[p] = root;
      p = next;
    }
    return root;
  }

  void merge(size_t a, size_t b) {
    size_t ra = find(a), rb = find(b);
    if (ra == rb) return;
    if (size_[ra] < size_[rb]) std::swap(ra, rb);
    parent_[rb] = ra;
    size_[ra] += size_[rb];
    --count_;
  }

  size_t count() const { return count_; }

 private:
  std::vector<size_t> parent_;
  std::vector<size_t> size_;
  size_t count_;
};

// Overlap-partition block count over the X range: elements sharing a
// conditional range [X|y] are merged, then chains of intersecting conditional
// ranges collapse transitively.
size_t overlap_block_count(const JointRelation& rel, OverlapPartition* partition) {
  const auto& xs = rel.x_range();
  UnionFind uf(xs.size());
  auto index_of = [&](const Value& v) {
    auto it = std::lower_bound(xs.begin(), xs.end(), v);
    return static_cast<size_t>(it - xs.begin());
  };
  for (const auto& y : rel.y_range()) {
    FiniteRange cond = rel.x_given_y(y);
    size_t first = index_of(cond[0]);
    for (size_t i = 1; i < cond.size(); ++i) uf.merge(first, index_of(cond[i]));
  }
  if (partition != nullptr) {
    std::map<size_t, std::vector<Value>> blocks;
    for (size_t i = 0; i < xs.size(); ++i) blocks[uf.find(i)].push_back(xs[i]);
    partition->blocks.clear();
    for (auto& [root, elems] : blocks) {
      (void)root;
      partition->blocks.emplace_back(std::move(elems));
    }
    std::sort(partition->blocks.begin(), partition->blocks.end());
  }
  return uf.count();
}

}  // namespace

LeakageResult nonstochastic_leakage(const JointRelation& rel, Direction dir) {
  const JointRelation* r = &rel;
  JointRelation flipped = rel.swapped();
  if (dir == Direction::y_given_x) r = &flipped;

  const double marginal = static_cast<double>(r->x_range().size());
  double worst = -std::numeric_limits<double>::infinity();
  double best = std::numeric_limits<double>::infinity();
  for (const auto& y : r->y_range()) {
    double ratio = std::log2(marginal / static_cast<double>(r->x_given_y(y).size()));
    worst = std::max(worst, ratio);
    best = std::min(best, ratio);
  }
  return {worst, best};
}

double symmetrized_leakage(const JointRelation& rel) {
  return std::min(nonstochastic_leakage(rel, Direction::x_given_y).leakage_bits,
                  nonstochastic_leakage(rel, Direction::y_given_x).leakage_bits);
}

MaximinResult maximin_information(const JointRelation& rel) {
  MaximinResult result;
  size_t blocks = overlap_block_count(rel, &result.partition);
  size_t blocks_flipped = overlap_block_count(rel.swapped(), nullptr);
  if (blocks != blocks_flipped)
    throw InternalError("overlap partition block counts disagree across directions: " +
                        std::to_string(blocks) + " vs " + std::to_string(blocks_flipped));
  result.bits = std::log2(static_cast<double>(blocks));
  return result;
}

ChannelSpec::ChannelSpec(FiniteRange inputs, std::map<Value, FiniteRange> outputs)
    : inputs_(std::move(inputs)), outputs_(std::move(outputs)) {
  if (inputs_.empty()) throw ArgumentError("channel needs at least one input symbol");
  for (const auto& x : inputs_) {
    auto it = outputs_.find(x);
    if (it == outputs_.end() || it->second.empty())
      throw ArgumentError("channel input '" + x.to_string() +
                          "' has no output set or an empty one");
  }
  if (outputs_.size() != inputs_.size())
    throw ArgumentError("channel output map mentions symbols outside the input range");

  const size_t n = inputs_.size();
  confusable_.assign(n, std::vector<bool>(n, false));
  for (size_t a = 0; a < n; ++a) {
    const auto& oa = outputs_.at(inputs_[a]);
    for (size_t b = a; b < n; ++b) {
      const auto& ob = outputs_.at(inputs_[b]);
      bool overlap = false;
      for (const auto& y : oa) {
        if (ob.contains(y)) {
          overlap = true;
          break;
        }
      }
      confusable_[a][b] = confusable_[b][a] = overlap;
    }
  }
}

ChannelSpec ChannelSpec::cyclic(size_t m) {
  if (m < 2) throw ArgumentError("cyclic channel needs at least two symbols");
  std::vector<Value> syms;
  std::map<Value, FiniteRange> outputs;
  for (size_t i = 0; i < m; ++i) syms.emplace_back(static_cast<int>(i));
  for (size_t i = 0; i < m; ++i) {
    outputs.emplace(syms[i], FiniteRange({syms[i], syms[(i + 1) % m]}));
  }
  return ChannelSpec(FiniteRange(syms), std::move(outputs));
}

const FiniteRange& ChannelSpec::outputs_for(const Value& x) const {
  auto it = outputs_.find(x);
  if (it == outputs_.end())
    throw DomainError("'" + x.to_string() + "' is not a channel input symbol");
  return it->second;
}

bool ChannelSpec::confusable(size_t input_a, size_t input_b) const {
  return confusable_[input_a][input_b];
}

namespace {

// Exact maximum independent set over the implicit k-fold product confusability
// graph. Words are numbered lexicographically; branching prefers inclusion of
// the smallest remaining word, so the first optimum found is the
// lexicographically smallest and pruning on <= best preserves it.
class CodeSearch {
 public:
  CodeSearch(const ChannelSpec& channel, size_t k, size_t word_count)
      : channel_(channel), k_(k), base_(channel.inputs().size()), word_count_(word_count) {}

  std::vector<uint64_t> run() {
    std::vector<uint64_t> candidates(word_count_);
    std::iota(candidates.begin(), candidates.end(), uint64_t{0});
    std::vector<uint64_t> chosen;
    search(candidates, chosen);
    return best_;
  }

 private:
  bool words_confusable(uint64_t a, uint64_t b) const {
    for (size_t pos = 0; pos < k_; ++pos) {
      if (!channel_.confusable(a % base_, b % base_)) return false;
      a /= base_;
      b /= base_;
    }
    return true;
  }

  void search(const std::vector<uint64_t>& candidates, std::vector<uint64_t>& chosen) {
    if (chosen.size() + candidates.size() <= best_.size()) return;
    if (candidates.empty()) {
      best_ = chosen;
      return;
    }
    uint64_t v = candidates.front();

    // Include v, then drop everything confusable with it.
    std::vector<uint64_t> remaining;
    remaining.reserve(candidates.size());
    for (size_t i = 1; i < candidates.size(); ++i)
      if (!words_confusable(v, candidates[i])) remaining.push_back(candidates[i]);
    chosen.push_back(v);
    search(remaining, chosen);
    chosen.pop_back();

    // Exclude v.
    std::vector<uint64_t> rest(candidates.begin() + 1, candidates.end());
    search(rest, chosen);
  }

  const ChannelSpec& channel_;
  size_t k_;
  size_t base_;
  uint64_t word_count_;
  std::vector<uint64_t> best_;
};

}  // namespace

ZeroErrorCode zero_error_code_search(const ChannelSpec& channel, size_t k,
                                     const ZeroErrorSearchOptions& options) {
  if (k < 1) throw ArgumentError("block length k must be at least 1");
  const size_t base = channel.inputs().size();
  uint64_t word_count = 1;
  for (size_t i = 0; i < k; ++i) {
    if (word_count > options.node_cap / base)
      throw ResourceError("zero-error search needs " + std::to_string(base) + "^" +
                          std::to_string(k) + " graph nodes, above the cap of " +
                          std::to_string(options.node_cap));
    word_count *= base;
  }

  CodeSearch search(channel, k, word_count);
  std::vector<uint64_t> ids = search.run();

  ZeroErrorCode code;
  code.size = ids.size();
  code.rate_bits = std::log2(static_cast<double>(code.size)) / static_cast<double>(k);
  for (uint64_t id : ids) {
    std::vector<Value> word(k);
    uint64_t rest = id;
    for (size_t pos = k; pos-- > 0;) {
      word[pos] = channel.inputs()[rest % base];
      rest /= base;
    }
    code.words.push_back(std::move(word));
  }
  std::sort(code.words.begin(), code.words.end());
  return code;
}

PriorSpec PriorSpec::finite(FiniteRange support, std::vector<double> masses) {
  if (support.empty()) throw ArgumentError("prior support is empty");
  if (masses.size() != support.size())
    throw ArgumentError("prior declares " + std::to_string(masses.size()) +
                        " masses for " + std::to_string(support.size()) + " points");
  double total = 0.0;
  for (double m : masses) {
    if (m < 0.0) throw ArgumentError("negative prior mass");
    total += m;
  }
  if (std::abs(total - 1.0) > 1e-9)
    throw ArgumentError("prior masses sum to " + std::to_string(total) + ", expected 1");
  PriorSpec p;
  p.rho_ = *std::min_element(masses.begin(), masses.end());
  p.finite_ = std::move(support);
  p.masses_ = std::move(masses);
  return p;
}

PriorSpec PriorSpec::uniform(IntervalUnion support) {
  Rational m = support.measure();
  if (m <= 0) throw ArgumentError("uniform prior needs positive-measure support");
  double density = 1.0 / to_double(m);
  std::vector<double> densities(support.intervals().size(), density);
  return piecewise(std::move(support), std::move(densities));
}

PriorSpec PriorSpec::piecewise(IntervalUnion support, std::vector<double> densities) {
  if (support.empty()) throw ArgumentError("prior support is empty");
  if (densities.size() != support.intervals().size())
    throw ArgumentError("prior declares " + std::to_string(densities.size()) +
                        " densities for " + std::to_string(support.intervals().size()) +
                        " intervals");
  double total = 0.0;
  for (size_t i = 0; i < densities.size(); ++i) {
    if (densities[i] < 0.0) throw ArgumentError("negative prior density");
    const auto& piece = support.intervals()[i];
    total += densities[i] * to_double(piece.hi - piece.lo);
  }
  if (std::abs(total - 1.0) > 1e-9)
    throw ArgumentError("prior density integrates to " + std::to_string(total) +
                        ", expected 1");
  PriorSpec p;
  p.rho_ = *std::min_element(densities.begin(), densities.end());
  p.support_ = std::move(support);
  p.densities_ = std::move(densities);
  p.cumulative_.resize(p.densities_.size());
  double acc = 0.0;
  for (size_t i = 0; i < p.densities_.size(); ++i) {
    const auto& piece = p.support_.intervals()[i];
    acc += p.densities_[i] * to_double(piece.hi - piece.lo);
    p.cumulative_[i] = acc;
  }
  p.cumulative_.back() = 1.0;
  return p;
}

const FiniteRange& PriorSpec::finite_support() const {
  if (!is_finite()) throw ArgumentError("prior is continuous");
  return *finite_;
}

const IntervalUnion& PriorSpec::continuous_support() const {
  if (is_finite()) throw ArgumentError("prior is finite");
  return support_;
}

double PriorSpec::mass_of(const Value& v) const {
  const FiniteRange& s = finite_support();
  auto it = std::lower_bound(s.begin(), s.end(), v);
  if (it == s.end() || *it != v)
    throw DomainError("'" + v.to_string() + "' is outside the prior support");
  return masses_[static_cast<size_t>(it - s.begin())];
}

double PriorSpec::sample(Rng& rng) const {
  if (is_finite()) throw ArgumentError("sampling is defined for continuous priors");
  double u = rng.uniform01();
  size_t piece = 0;
  while (piece + 1 < cumulative_.size() && u >= cumulative_[piece]) ++piece;
  const auto& iv = support_.intervals()[piece];
  double lo = to_double(iv.lo), hi = to_double(iv.hi);
  double prev = piece == 0 ? 0.0 : cumulative_[piece - 1];
  double span = cumulative_[piece] - prev;
  double frac = span > 0.0 ? (u - prev) / span : 0.0;
  return lo + frac * (hi - lo);
}

double maximal_leakage(const JointRelation& channel, const PriorSpec& prior) {
  if (!prior.is_finite())
    throw ArgumentError("maximal leakage needs a finite prior");
  if (prior.finite_support() != channel.x_range())
    throw ArgumentError("prior support " + prior.finite_support().to_string() +
                        " does not equal the channel input range " +
                        channel.x_range().to_string());
  if (!channel.deterministic())
    throw ArgumentError("maximal leakage is defined here for deterministic channels");
  std::vector<Value> reachable;
  for (const auto& x : channel.x_range()) {
    if (prior.mass_of(x) > 0.0) reachable.push_back(channel.y_given_x(x)[0]);
  }
  FiniteRange image(std::move(reachable));
  if (image.empty())
    throw ArgumentError("prior assigns zero mass to every channel input");
  return std::log2(static_cast<double>(image.size()));
}

}  // namespace npriv
