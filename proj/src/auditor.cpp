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

#include "npriv/auditor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "npriv/errors.hpp"
#include "npriv/format.hpp"
#include "npriv/rng.hpp"

namespace npriv {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string tuple_to_string(const std::vector<Value>& vals) {
  std::string out = "(";
  for (size_t i = 0; i < vals.size(); ++i) {
    if (i > 0) out += ",";
    out += vals[i].to_string();
  }
  return out + ")";
}

// ---------------------------------------------------------------------------
// Exact enumeration over finite domain boxes.
// ---------------------------------------------------------------------------

IndividualAudit audit_one_finite(const DatasetSpec& dataset, const MechanismSpec& mech,
                                 size_t i) {
  const auto& di = std::get<FiniteRange>(dataset.domain(i));
  std::vector<Domain> others;
  others.reserve(dataset.n() - 1);
  for (size_t j = 0; j < dataset.n(); ++j)
    if (j != i) others.push_back(dataset.domain(j));

  IndividualAudit result;
  auto consider = [&](const std::vector<Value>& pinned) {
    std::set<Value> outputs;
    for (const auto& xi : di) outputs.insert(apply(mech, dataset, insert_at(pinned, i, xi)));
    if (outputs.empty()) throw InternalError("empty conditional output set");
    if (outputs.size() > result.max_count) {
      result.max_count = outputs.size();
      result.argmax_others = pinned;
    }
  };

  if (others.empty()) {
    consider({});
  } else {
    for (TupleEnumerator it(others); !it.done(); it.advance()) consider(it.value());
  }
  return result;
}

// ---------------------------------------------------------------------------
// Exact path for affine queries over continuous (or mixed) domains.
//
// With the others pinned, the query image of individual i is
// A + w_i * D_i where A collects the pinned contributions. The conditional
// output count only changes when an image endpoint crosses a mechanism
// breakpoint, so the worst case over all pinnings is found by evaluating a
// finite set of alignment candidates exactly.
// ---------------------------------------------------------------------------

struct PiecewiseInfo {
  std::vector<Rational> breakpoints;  // sorted cell boundaries of all quantizers
  std::vector<std::pair<Rational, Rational>> quantizer_ranges;
  bool has_identity = false;
  bool quantizer_only = false;  // exactly one quantizer node and nothing else
};

void collect_piecewise(const MechanismSpec& mech, PiecewiseInfo& info) {
  switch (mech.kind()) {
    case MechanismSpec::Kind::identity:
      info.has_identity = true;
      return;
    case MechanismSpec::Kind::constant:
      return;
    case MechanismSpec::Kind::quantizer: {
      const auto& qs = mech.quantizer_spec();
      Rational w = qs.cell_width();
      for (int64_t j = 1; j < qs.q(); ++j) info.breakpoints.push_back(qs.x_min() + w * j);
      info.quantizer_ranges.emplace_back(qs.x_min(), qs.x_max());
      return;
    }
    case MechanismSpec::Kind::compose:
      for (const auto& child : mech.children()) collect_piecewise(child, info);
      return;
    case MechanismSpec::Kind::postprocess:
      collect_piecewise(mech.inner(), info);
      return;
  }
}

PiecewiseInfo analyze_mechanism(const MechanismSpec& mech) {
  PiecewiseInfo info;
  collect_piecewise(mech, info);
  std::sort(info.breakpoints.begin(), info.breakpoints.end());
  info.breakpoints.erase(std::unique(info.breakpoints.begin(), info.breakpoints.end()),
                         info.breakpoints.end());
  info.quantizer_only = mech.kind() == MechanismSpec::Kind::quantizer;
  return info;
}

// Distinct cells of a single quantizer met by an interval union (which must
// lie inside the quantizer range).
uint64_t quantizer_cell_count(const QuantizerSpec& qs, const IntervalUnion& u) {
  uint64_t count = 0;
  int64_t covered_hi = -1;
  for (const auto& piece : u.intervals()) {
    int64_t lo = qs.cell_index(piece.lo);
    int64_t hi = qs.cell_index(piece.hi);
    lo = std::max(lo, covered_hi + 1);
    if (hi >= lo) {
      count += static_cast<uint64_t>(hi - lo + 1);
      covered_hi = hi;
    } else {
      covered_hi = std::max(covered_hi, hi);
    }
  }
  return count;
}

// Output count of a piecewise-constant mechanism over an interval union:
// evaluate at every breakpoint inside the union and at one interior point of
// every sub-piece between breakpoints.
std::optional<uint64_t> count_outputs_on_union(const MechanismSpec& mech,
                                               const IntervalUnion& u,
                                               const PiecewiseInfo& info) {
  if (u.empty()) throw InternalError("empty query image");
  if (info.has_identity && u.measure() > 0) return std::nullopt;
  if (info.quantizer_only) return quantizer_cell_count(mech.quantizer_spec(), u);

  std::set<Value> outputs;
  for (const auto& piece : u.intervals()) {
    std::vector<Rational> points;
    points.push_back(piece.lo);
    auto first = std::upper_bound(info.breakpoints.begin(), info.breakpoints.end(), piece.lo);
    for (auto it = first; it != info.breakpoints.end() && *it < piece.hi; ++it)
      points.push_back(*it);
    if (piece.hi != piece.lo) points.push_back(piece.hi);
    std::vector<Rational> samples = points;
    for (size_t k = 0; k + 1 < points.size(); ++k)
      samples.push_back((points[k] + points[k + 1]) / 2);
    for (const auto& y : samples) outputs.insert(mech.apply_to_output(y));
  }
  return outputs.size();
}

// w * D as an interval union (finite domains become degenerate points).
IntervalUnion scaled_domain(const Domain& d, const Rational& w) {
  if (domain_is_finite(d)) {
    const auto& r = std::get<FiniteRange>(d);
    std::vector<IntervalUnion::Interval> pts;
    pts.reserve(r.size());
    if (w == 0) return IntervalUnion::point(0);
    for (const auto& v : r) {
      Rational x = w * v.as_rational();
      pts.push_back({x, x});
    }
    return IntervalUnion(std::move(pts));
  }
  return std::get<IntervalUnion>(d).scaled(w);
}

struct ContinuousAuditContext {
  const DatasetSpec& dataset;
  const MechanismSpec& mech;
  const PiecewiseInfo& info;
  uint64_t candidate_cap;
};

// Picks a witness tuple for the other individuals achieving pinned sum A.
std::vector<Value> reconstruct_witness(const ContinuousAuditContext& ctx, size_t i,
                                       const Rational& target_sum) {
  const auto& w = ctx.dataset.weights();
  std::vector<size_t> others;
  for (size_t j = 0; j < ctx.dataset.n(); ++j)
    if (j != i) others.push_back(j);

  // suffix[k] = attainable sum of contributions from others[k..].
  std::vector<IntervalUnion> suffix(others.size() + 1);
  suffix[others.size()] = IntervalUnion::point(0);
  for (size_t k = others.size(); k-- > 0;)
    suffix[k] = scaled_domain(ctx.dataset.domain(others[k]), w[others[k]])
                    .minkowski_sum(suffix[k + 1]);

  std::vector<Value> witness;
  Rational remaining = target_sum - ctx.dataset.query().offset();
  for (size_t k = 0; k < others.size(); ++k) {
    size_t j = others[k];
    IntervalUnion contributions = scaled_domain(ctx.dataset.domain(j), w[j]);
    // Valid contributions c: c in w_j*D_j and remaining - c attainable later.
    IntervalUnion feasible =
        contributions.intersect(suffix[k + 1].scaled(-1).shifted(remaining));
    if (feasible.empty())
      throw InternalError("witness reconstruction found no feasible contribution");
    Rational c = feasible.min();
    Value x_j;
    if (w[j] == 0) {
      const Domain& d = ctx.dataset.domain(j);
      x_j = domain_is_finite(d) ? std::get<FiniteRange>(d)[0]
                                : Value(std::get<IntervalUnion>(d).min());
      c = 0;
    } else {
      x_j = Value(c / w[j]);
    }
    witness.push_back(x_j);
    remaining -= c;
  }
  if (remaining != 0) throw InternalError("witness reconstruction left a remainder");
  return witness;
}

IndividualAudit audit_one_continuous(const ContinuousAuditContext& ctx, size_t i) {
  const auto& w = ctx.dataset.weights();
  IntervalUnion image_offsets = scaled_domain(ctx.dataset.domain(i), w[i]);

  IntervalUnion pinned_sums = IntervalUnion::point(ctx.dataset.query().offset());
  for (size_t j = 0; j < ctx.dataset.n(); ++j) {
    if (j == i) continue;
    pinned_sums = pinned_sums.minkowski_sum(scaled_domain(ctx.dataset.domain(j), w[j]));
  }

  // Totality: the whole query image must stay inside every quantizer range.
  IntervalUnion full_image = pinned_sums.minkowski_sum(image_offsets);
  for (const auto& [lo, hi] : ctx.info.quantizer_ranges) {
    if (full_image.min() < lo || full_image.max() > hi)
      throw DomainError("query image " + full_image.to_string() +
                        " leaves the quantizer range [" + to_string(lo) + "," +
                        to_string(hi) + "]; the mechanism is not total");
  }

  // Alignment candidates: pinned sums where an image endpoint crosses a
  // breakpoint, interval ends, and interior points between consecutive
  // candidates.
  std::vector<Rational> endpoints;
  for (const auto& piece : image_offsets.intervals()) {
    endpoints.push_back(piece.lo);
    endpoints.push_back(piece.hi);
  }
  std::sort(endpoints.begin(), endpoints.end());
  endpoints.erase(std::unique(endpoints.begin(), endpoints.end()), endpoints.end());

  IndividualAudit result;
  for (const auto& piece : pinned_sums.intervals()) {
    std::vector<Rational> candidates{piece.lo, piece.hi};
    for (const auto& e : endpoints) {
      auto first = std::lower_bound(ctx.info.breakpoints.begin(),
                                    ctx.info.breakpoints.end(), piece.lo + e);
      for (auto it = first; it != ctx.info.breakpoints.end() && *it <= piece.hi + e; ++it)
        candidates.push_back(*it - e);
      if (candidates.size() > ctx.candidate_cap)
        throw ResourceError(
            "exact audit needs more than " + std::to_string(ctx.candidate_cap) +
            " alignment candidates; rerun with a grid step");
    }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    std::vector<Rational> with_interior = candidates;
    for (size_t k = 0; k + 1 < candidates.size(); ++k)
      with_interior.push_back((candidates[k] + candidates[k + 1]) / 2);

    for (const auto& a : with_interior) {
      auto count = count_outputs_on_union(ctx.mech, image_offsets.shifted(a), ctx.info);
      if (!count) {
        result.infinite = true;
        result.max_count = 0;
        result.argmax_others = reconstruct_witness(ctx, i, a);
        return result;
      }
      if (*count > result.max_count) {
        result.max_count = *count;
        result.argmax_others = reconstruct_witness(ctx, i, a);
      }
    }
  }
  return result;
}

AuditReport finalize_report(std::vector<IndividualAudit> per_individual,
                            AuditReport::Mode mode) {
  AuditReport report;
  report.per_individual = std::move(per_individual);
  report.mode = mode;
  for (const auto& ind : report.per_individual) {
    report.infinite = report.infinite || ind.infinite;
    report.max_count = std::max(report.max_count, ind.max_count);
  }
  if (report.infinite) {
    report.epsilon_star = kInf;
    report.note = "identity mechanism over continuous data; unbounded output range";
  } else {
    report.epsilon_star = std::log2(static_cast<double>(report.max_count));
  }
  return report;
}

DatasetSpec discretized(const DatasetSpec& dataset, const Rational& step,
                        bool* any_continuous) {
  std::vector<Domain> gridded;
  gridded.reserve(dataset.n());
  for (const auto& d : dataset.domains()) {
    if (domain_is_finite(d)) {
      gridded.push_back(d);
    } else {
      gridded.emplace_back(grid_sample(std::get<IntervalUnion>(d), step));
      *any_continuous = true;
    }
  }
  return DatasetSpec(std::move(gridded), dataset.query());
}

}  // namespace

AuditReport audit(const DatasetSpec& dataset, const MechanismSpec& mech,
                  const AuditOptions& options) {
  if (options.grid_step) {
    bool any_continuous = false;
    DatasetSpec on_grid = discretized(dataset, *options.grid_step, &any_continuous);
    std::vector<IndividualAudit> per_individual;
    for (size_t i = 0; i < on_grid.n(); ++i)
      per_individual.push_back(audit_one_finite(on_grid, mech, i));
    AuditReport report = finalize_report(std::move(per_individual), AuditReport::Mode::grid);
    report.grid_step = options.grid_step;
    report.lower_bound = any_continuous;
    return report;
  }

  if (dataset.all_finite()) {
    std::vector<IndividualAudit> per_individual;
    for (size_t i = 0; i < dataset.n(); ++i)
      per_individual.push_back(audit_one_finite(dataset, mech, i));
    return finalize_report(std::move(per_individual), AuditReport::Mode::exact_finite);
  }

  if (!dataset.query().is_affine_kind())
    throw PreconditionError(
        "continuous domains with a non-affine query need a grid step");

  PiecewiseInfo info = analyze_mechanism(mech);
  ContinuousAuditContext ctx{dataset, mech, info, options.candidate_cap};
  std::vector<IndividualAudit> per_individual;
  for (size_t i = 0; i < dataset.n(); ++i)
    per_individual.push_back(audit_one_continuous(ctx, i));
  return finalize_report(std::move(per_individual),
                         AuditReport::Mode::exact_quantizer_affine);
}

AuditReport audit_local(const DatasetSpec& dataset, const MechanismSpec& mech,
                        const AuditOptions& options) {
  PiecewiseInfo info = analyze_mechanism(mech);
  std::vector<IndividualAudit> per_individual;
  bool used_continuous = false;
  bool any_gridded = false;

  for (size_t i = 0; i < dataset.n(); ++i) {
    Domain d = dataset.domain(i);
    if (!domain_is_finite(d) && options.grid_step) {
      d = grid_sample(std::get<IntervalUnion>(d), *options.grid_step);
      any_gridded = true;
    }
    IndividualAudit ind;
    if (domain_is_finite(d)) {
      const auto& r = std::get<FiniteRange>(d);
      if (!r.all_rational())
        throw ArgumentError("local audits need rational-valued domains, got " +
                            r.to_string());
      std::set<Value> outputs;
      for (const auto& x : r) outputs.insert(mech.apply_to_output(x.as_rational()));
      ind.max_count = outputs.size();
    } else {
      used_continuous = true;
      const auto& iv = std::get<IntervalUnion>(d);
      for (const auto& [lo, hi] : info.quantizer_ranges) {
        if (iv.min() < lo || iv.max() > hi)
          throw DomainError("domain " + iv.to_string() + " leaves the quantizer range [" +
                            to_string(lo) + "," + to_string(hi) +
                            "]; the mechanism is not total");
      }
      auto count = count_outputs_on_union(mech, iv, info);
      if (!count)
        ind.infinite = true;
      else
        ind.max_count = *count;
    }
    per_individual.push_back(std::move(ind));
  }

  AuditReport::Mode mode = AuditReport::Mode::exact_finite;
  if (any_gridded)
    mode = AuditReport::Mode::grid;
  else if (used_continuous)
    mode = AuditReport::Mode::exact_quantizer_affine;
  AuditReport report = finalize_report(std::move(per_individual), mode);
  if (any_gridded) {
    report.grid_step = options.grid_step;
    report.lower_bound = true;
  }
  return report;
}

std::string AuditReport::mode_name() const {
  switch (mode) {
    case Mode::exact_finite:
      return "exact-finite";
    case Mode::exact_quantizer_affine:
      return "exact-quantizer-affine";
    case Mode::grid:
      return "grid(" + to_string(grid_step.value()) + ")";
  }
  throw InternalError("unreachable audit mode");
}

std::string AuditReport::to_text() const {
  std::string out;
  out += "mode = " + mode_name() + "\n";
  out += "epsilon_star = " + format_double(epsilon_star) + "\n";
  out += "max_count = " + (infinite ? "inf" : std::to_string(max_count)) + "\n";
  if (lower_bound) out += "lower_bound = true\n";
  if (!note.empty()) out += "note = " + note + "\n";
  for (size_t i = 0; i < per_individual.size(); ++i) {
    const auto& ind = per_individual[i];
    out += "individual_" + std::to_string(i + 1) + ".count = " +
           (ind.infinite ? "inf" : std::to_string(ind.max_count)) + "\n";
    if (!ind.argmax_others.empty())
      out += "individual_" + std::to_string(i + 1) +
             ".argmax_others = " + tuple_to_string(ind.argmax_others) + "\n";
  }
  return out;
}

std::string AuditReport::to_csv() const {
  std::string out = "individual,count,epsilon_i,argmax_others\n";
  for (size_t i = 0; i < per_individual.size(); ++i) {
    const auto& ind = per_individual[i];
    double eps_i = ind.infinite ? kInf : std::log2(static_cast<double>(ind.max_count));
    out += std::to_string(i + 1) + "," +
           (ind.infinite ? "inf" : std::to_string(ind.max_count)) + "," +
           format_double(eps_i) + "," +
           (ind.argmax_others.empty() ? "" : tuple_to_string(ind.argmax_others)) + "\n";
  }
  return out;
}

HypothesisReport hypothesis_analysis(const DatasetSpec& dataset, const MechanismSpec& mech,
                                     size_t i, const Value& x_a, const Value& x_b,
                                     const std::vector<Value>& others) {
  if (x_a == x_b)
    throw ArgumentError("the two hypothesized values must differ, both are '" +
                        x_a.to_string() + "'");
  if (!domain_contains(dataset.domain(i), x_a) || !domain_contains(dataset.domain(i), x_b))
    throw DomainError("hypothesized values must lie in the domain of individual " +
                      std::to_string(i + 1));

  Value y_a = apply(mech, dataset, insert_at(others, i, x_a));
  Value y_b = apply(mech, dataset, insert_at(others, i, x_b));

  HypothesisReport report;
  report.y_given_p0 = FiniteRange({y_a});
  report.y_given_p1 = FiniteRange({y_b});
  if (y_a == y_b) {
    report.distinguishable = false;
    report.bound_bits = -kInf;
    report.best_test_bits = -kInf;
    return report;
  }
  report.symmetric_difference = FiniteRange({y_a, y_b});
  report.distinguishable = true;
  report.bound_bits = std::log2(static_cast<double>(report.symmetric_difference.size()));
  // The optimal test accepts exactly on the symmetric difference, where the
  // hypothesis is uniquely determined.
  report.best_test_bits = report.bound_bits;
  return report;
}

std::string HypothesisReport::to_text() const {
  std::string out;
  out += "y_given_p0 = " + y_given_p0.to_string() + "\n";
  out += "y_given_p1 = " + y_given_p1.to_string() + "\n";
  out += "symmetric_difference = " + symmetric_difference.to_string() + "\n";
  if (distinguishable) {
    out += "bound = " + format_double(bound_bits) + "\n";
    out += "best_test_performance = " + format_double(best_test_bits) + "\n";
  } else {
    out += "best_test_performance = no distinguishing output\n";
  }
  return out;
}

std::string HypothesisReport::to_csv() const {
  std::string out = "y_given_p0,y_given_p1,delta_size,bound,best_test\n";
  out += y_given_p0.to_string() + "," + y_given_p1.to_string() + "," +
         std::to_string(symmetric_difference.size()) + ",";
  if (distinguishable)
    out += format_double(bound_bits) + "," + format_double(best_test_bits);
  else
    out += "-inf,no distinguishing output";
  return out + "\n";
}

namespace {

FiniteRange finite_or_gridded_domain(const DatasetSpec& dataset, size_t i,
                                     const std::optional<Rational>& grid_step) {
  const Domain& d = dataset.domain(i);
  if (domain_is_finite(d)) return std::get<FiniteRange>(d);
  if (grid_step) return grid_sample(std::get<IntervalUnion>(d), *grid_step);
  throw PreconditionError("individual " + std::to_string(i + 1) +
                          " has a continuous domain; supply a grid step");
}

}  // namespace

JointRelation induced_relation(const DatasetSpec& dataset, const MechanismSpec& mech,
                               size_t i, const std::vector<Value>& others,
                               const std::optional<Rational>& grid_step) {
  FiniteRange di = finite_or_gridded_domain(dataset, i, grid_step);
  std::vector<JointRelation::Pair> pairs;
  pairs.reserve(di.size());
  for (const auto& xi : di)
    pairs.emplace_back(xi, apply(mech, dataset, insert_at(others, i, xi)));
  return JointRelation::from_pairs(std::move(pairs));
}

ChannelSpec induced_channel(const DatasetSpec& dataset, const MechanismSpec& mech,
                            size_t i, const std::vector<Value>& others,
                            const std::optional<Rational>& grid_step) {
  JointRelation rel = induced_relation(dataset, mech, i, others, grid_step);
  std::map<Value, FiniteRange> outputs;
  for (const auto& x : rel.x_range()) outputs.emplace(x, rel.y_given_x(x));
  return ChannelSpec(rel.x_range(), std::move(outputs));
}

ChannelSpec induced_uncertain_channel(const DatasetSpec& dataset,
                                      const MechanismSpec& mech, size_t i) {
  if (!dataset.all_finite())
    throw PreconditionError("the uncertain induced channel needs finite domains");
  const auto& di = std::get<FiniteRange>(dataset.domain(i));
  std::vector<Domain> others;
  for (size_t j = 0; j < dataset.n(); ++j)
    if (j != i) others.push_back(dataset.domain(j));

  std::map<Value, FiniteRange> outputs;
  for (const auto& xi : di) {
    std::vector<Value> ys;
    if (others.empty()) {
      ys.push_back(apply(mech, dataset, {xi}));
    } else {
      for (TupleEnumerator it(others); !it.done(); it.advance())
        ys.push_back(apply(mech, dataset, insert_at(it.value(), i, xi)));
    }
    outputs.emplace(xi, FiniteRange(std::move(ys)));
  }
  return ChannelSpec(di, std::move(outputs));
}

InformationChain theorem1_check(const DatasetSpec& dataset, const MechanismSpec& mech,
                                size_t i, const std::vector<Value>& others,
                                const std::optional<Rational>& grid_step) {
  JointRelation rel = induced_relation(dataset, mech, i, others, grid_step);

  InformationChain chain;
  chain.maximin_bits = maximin_information(rel).bits;
  chain.symmetrized_leakage_bits = symmetrized_leakage(rel);
  chain.output_leakage_bits =
      nonstochastic_leakage(rel, Direction::y_given_x).leakage_bits;
  chain.epsilon_star = audit(dataset, mech).epsilon_star;

  constexpr double kSlack = 1e-9;
  if (chain.maximin_bits < -kSlack ||
      chain.maximin_bits > chain.symmetrized_leakage_bits + kSlack ||
      chain.symmetrized_leakage_bits > chain.output_leakage_bits + kSlack ||
      chain.output_leakage_bits > chain.epsilon_star + kSlack)
    throw InternalError(
        "information chain violated: I*=" + format_double(chain.maximin_bits) +
        " L0s=" + format_double(chain.symmetrized_leakage_bits) +
        " L0(Y;Xi)=" + format_double(chain.output_leakage_bits) +
        " eps*=" + format_double(chain.epsilon_star));
  return chain;
}

namespace {

// x_i domain, pinned constants and the affine slope of y = w_i x_i + c.
struct PinnedAffine {
  IntervalUnion domain;  // single interval
  Rational slope;
  Rational intercept;
};

PinnedAffine pinned_affine_view(const DatasetSpec& dataset, size_t i) {
  if (!dataset.query().is_affine_kind())
    throw PreconditionError("stochastic-prior checks need an affine-kind query");
  if (i >= dataset.n()) throw ArgumentError("individual index out of range");
  const Domain& d = dataset.domain(i);
  if (domain_is_finite(d))
    throw PreconditionError("individual " + std::to_string(i + 1) +
                            " needs a continuous interval domain");
  const auto& iv = std::get<IntervalUnion>(d);
  if (!iv.is_single_interval() || iv.measure() == 0)
    throw PreconditionError("domain of individual " + std::to_string(i + 1) +
                            " must be a single interval of positive measure");

  PinnedAffine view;
  view.domain = iv;
  const auto& w = dataset.weights();
  view.slope = w[i];
  view.intercept = dataset.query().offset();
  for (size_t j = 0; j < dataset.n(); ++j) {
    if (j == i) continue;
    const Domain& dj = dataset.domain(j);
    Rational pinned;
    if (domain_is_finite(dj)) {
      const auto& r = std::get<FiniteRange>(dj);
      if (r.size() != 1)
        throw ArgumentError("pin the other individuals first (substitute); individual " +
                            std::to_string(j + 1) + " still varies");
      pinned = r[0].as_rational();
    } else {
      const auto& rj = std::get<IntervalUnion>(dj);
      if (rj.measure() != 0 || !rj.is_single_interval())
        throw ArgumentError("pin the other individuals first (substitute); individual " +
                            std::to_string(j + 1) + " still varies");
      pinned = rj.min();
    }
    view.intercept += w[j] * pinned;
  }
  return view;
}

}  // namespace

MomentBoundCheck theorem4_check(const DatasetSpec& dataset, const MechanismSpec& mech,
                                size_t i, const PriorSpec& prior, unsigned moment_order,
                                uint64_t trials, uint64_t seed) {
  if (moment_order < 1) throw ArgumentError("moment order must be at least 1");
  if (trials < 1) throw ArgumentError("at least one trial is required");
  if (prior.is_finite())
    throw ArgumentError("stochastic-prior checks need a continuous prior density");

  PinnedAffine view = pinned_affine_view(dataset, i);
  if (prior.continuous_support() != view.domain)
    throw ArgumentError("prior support " + prior.continuous_support().to_string() +
                        " must equal the domain " + view.domain.to_string() +
                        " of individual " + std::to_string(i + 1));

  const auto kind = mech.kind();
  if (kind != MechanismSpec::Kind::identity && kind != MechanismSpec::Kind::constant &&
      kind != MechanismSpec::Kind::quantizer)
    throw PreconditionError(
        "preimages must be connected; use an identity, constant or quantizer mechanism");

  double d_lo = to_double(view.domain.min());
  double d_hi = to_double(view.domain.max());
  double domain_mid = 0.5 * (d_lo + d_hi);

  // Conditional-midpoint estimator per reachable output cell.
  std::vector<double> cell_midpoint;
  const QuantizerSpec* qs = nullptr;
  if (kind == MechanismSpec::Kind::quantizer) {
    qs = &mech.quantizer_spec();
    if (view.slope != 0) {
      Rational img_a = view.slope * view.domain.min() + view.intercept;
      Rational img_b = view.slope * view.domain.max() + view.intercept;
      if (std::min(img_a, img_b) < qs->x_min() || std::max(img_a, img_b) > qs->x_max())
        throw DomainError("query image leaves the quantizer range; mechanism not total");
    }
    cell_midpoint.resize(static_cast<size_t>(qs->q()), domain_mid);
    if (view.slope != 0) {
      Rational w = qs->cell_width();
      for (int64_t cell = 0; cell < qs->q(); ++cell) {
        // Preimage of cell [x_min + cell*w, x_min + (cell+1)*w] in x_i space.
        Rational y_lo = qs->x_min() + w * cell;
        Rational y_hi = y_lo + w;
        Rational a = (y_lo - view.intercept) / view.slope;
        Rational b = (y_hi - view.intercept) / view.slope;
        if (a > b) std::swap(a, b);
        a = std::max(a, view.domain.min());
        b = std::min(b, view.domain.max());
        if (a <= b) cell_midpoint[static_cast<size_t>(cell)] = to_double((a + b) / 2);
      }
    }
  }

  MomentBoundCheck result;
  result.trials = trials;
  result.moment_order = moment_order;
  result.epsilon_star = audit(dataset, mech).epsilon_star;

  double slope = to_double(view.slope);
  double intercept = to_double(view.intercept);
  double sum = 0.0, sum_sq = 0.0;
  for (uint64_t t = 0; t < trials; ++t) {
    Rng rng(substream_seed(seed, t));
    double x = prior.sample(rng);
    double estimate;
    switch (kind) {
      case MechanismSpec::Kind::identity:
        estimate = x;
        break;
      case MechanismSpec::Kind::constant:
        estimate = domain_mid;
        break;
      default: {
        int64_t cell = qs->cell_index_clamped(slope * x + intercept);
        estimate = cell_midpoint[static_cast<size_t>(cell)];
        break;
      }
    }
    double err = std::pow(std::fabs(x - estimate), static_cast<double>(moment_order));
    sum += err;
    sum_sq += err * err;
  }
  result.empirical_moment = sum / static_cast<double>(trials);
  double variance =
      std::max(0.0, sum_sq / static_cast<double>(trials) -
                        result.empirical_moment * result.empirical_moment);
  result.standard_error = std::sqrt(variance / static_cast<double>(trials));

  if (prior.rho() <= 0.0) {
    result.rho_zero = true;
    result.lower_bound = 0.0;
    result.pass = true;
    return result;
  }
  double mu = to_double(view.domain.measure());
  double p = static_cast<double>(moment_order);
  result.lower_bound = prior.rho() * std::pow(mu, p + 1.0) / std::exp2(2.0 * p + 2.0) *
                       std::exp2(-result.epsilon_star * (p + 1.0));
  result.pass = result.empirical_moment >= result.lower_bound - 3.0 * result.standard_error;
  return result;
}

std::string MomentBoundCheck::to_text() const {
  std::string out;
  out += "empirical_moment = " + format_double(empirical_moment) + "\n";
  out += "lower_bound = " + format_double(lower_bound) + "\n";
  out += "standard_error = " + format_double(standard_error) + "\n";
  out += "epsilon_star = " + format_double(epsilon_star) + "\n";
  out += "moment_order = " + std::to_string(moment_order) + "\n";
  out += "trials = " + std::to_string(trials) + "\n";
  out += std::string("pass = ") + (pass ? "true" : "false") + "\n";
  if (rho_zero) out += "note = rho is zero; the bound degenerates to 0\n";
  return out;
}

LeakageBoundCheck theorem5_check(const DatasetSpec& dataset, const MechanismSpec& mech,
                                 size_t i, const std::vector<Value>& others,
                                 const PriorSpec& prior,
                                 const std::optional<Rational>& grid_step) {
  JointRelation rel = induced_relation(dataset, mech, i, others, grid_step);
  LeakageBoundCheck result;
  result.maximal_leakage_bits = maximal_leakage(rel, prior);
  result.epsilon_star = audit(dataset, mech).epsilon_star;
  result.pass = result.maximal_leakage_bits <= result.epsilon_star + 1e-9;
  return result;
}

}  // namespace npriv
