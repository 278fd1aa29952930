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

#include "npriv/games.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "npriv/errors.hpp"
#include "npriv/format.hpp"
#include "npriv/mechanisms.hpp"
#include "npriv/rng.hpp"

namespace npriv {

double ProfilePanel::max_value() const {
  double best = 0.0;
  for (const auto& series : profiles)
    for (double v : series) best = std::max(best, v);
  return best;
}

AdversaryPolicy parse_policy(const std::string& name) {
  if (name == "correlation") return AdversaryPolicy::correlation;
  if (name == "mse") return AdversaryPolicy::mse;
  if (name == "peaks") return AdversaryPolicy::peaks;
  throw ArgumentError("unknown policy '" + name + "' (correlation, mse, peaks)");
}

std::string policy_name(AdversaryPolicy policy) {
  switch (policy) {
    case AdversaryPolicy::correlation:
      return "correlation";
    case AdversaryPolicy::mse:
      return "mse";
    case AdversaryPolicy::peaks:
      return "peaks";
  }
  throw InternalError("unreachable policy");
}

namespace {

double pearson(const std::vector<double>& a, const std::vector<double>& b,
               bool* degenerate) {
  const size_t n = a.size();
  double mean_a = 0.0, mean_b = 0.0;
  for (size_t t = 0; t < n; ++t) {
    mean_a += a[t];
    mean_b += b[t];
  }
  mean_a /= static_cast<double>(n);
  mean_b /= static_cast<double>(n);
  double cov = 0.0, var_a = 0.0, var_b = 0.0;
  for (size_t t = 0; t < n; ++t) {
    double da = a[t] - mean_a, db = b[t] - mean_b;
    cov += da * db;
    var_a += da * da;
    var_b += db * db;
  }
  if (var_a <= 0.0 || var_b <= 0.0) {
    *degenerate = true;
    return 0.0;
  }
  return cov / std::sqrt(var_a * var_b);
}

double squared_error(const std::vector<double>& a, const std::vector<double>& b) {
  double total = 0.0;
  for (size_t t = 0; t < a.size(); ++t) {
    double d = a[t] - b[t];
    total += d * d;
  }
  return total;
}

size_t peak_matches(const std::vector<size_t>& candidate_peaks,
                    const std::vector<size_t>& published_peaks) {
  size_t matches = 0;
  for (size_t p : candidate_peaks) {
    for (size_t q : published_peaks) {
      size_t lo = q > 0 ? q - 1 : 0;
      if (p >= lo && p <= q + 1) {
        ++matches;
        break;
      }
    }
  }
  return matches;
}

int decide_mse(const std::vector<double>& c0, const std::vector<double>& c1,
               const std::vector<double>& y, uint64_t* ties) {
  double e0 = squared_error(c0, y);
  double e1 = squared_error(c1, y);
  if (e0 == e1) {
    ++*ties;
    return 0;
  }
  return e0 < e1 ? 0 : 1;
}

}  // namespace

std::vector<size_t> relative_peaks(const std::vector<double>& series) {
  std::vector<size_t> peaks;
  if (series.size() < 3) return peaks;
  std::vector<double> sorted = series;
  std::sort(sorted.begin(), sorted.end());
  const size_t n = sorted.size();
  double median = (n % 2 == 1) ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
  double level = 1.2 * median;
  for (size_t t = 1; t + 1 < series.size(); ++t) {
    if (series[t] > series[t - 1] && series[t] > series[t + 1] && series[t] >= level)
      peaks.push_back(t);
  }
  return peaks;
}

int policy_decide(AdversaryPolicy policy, const std::vector<double>& candidate0,
                  const std::vector<double>& candidate1,
                  const std::vector<double>& published, uint64_t* ties,
                  uint64_t* correlation_fallbacks) {
  if (candidate0.size() != published.size() || candidate1.size() != published.size())
    throw ArgumentError("candidate and published series must share the horizon");
  switch (policy) {
    case AdversaryPolicy::correlation: {
      bool degenerate = false;
      double r0 = pearson(candidate0, published, &degenerate);
      double r1 = pearson(candidate1, published, &degenerate);
      if (degenerate) {
        ++*correlation_fallbacks;
        return decide_mse(candidate0, candidate1, published, ties);
      }
      if (r0 == r1) {
        ++*ties;
        return 0;
      }
      return r0 > r1 ? 0 : 1;
    }
    case AdversaryPolicy::mse:
      return decide_mse(candidate0, candidate1, published, ties);
    case AdversaryPolicy::peaks: {
      std::vector<size_t> published_peaks = relative_peaks(published);
      size_t m0 = peak_matches(relative_peaks(candidate0), published_peaks);
      size_t m1 = peak_matches(relative_peaks(candidate1), published_peaks);
      if (m0 == m1) {
        ++*ties;
        return 0;
      }
      return m0 > m1 ? 0 : 1;
    }
  }
  throw InternalError("unreachable policy");
}

GameResult play_game(const ProfilePanel& panel, const GameConfig& cfg) {
  if (cfg.n < 1) throw ArgumentError("aggregate group size must be at least 1");
  if (cfg.trials < 1) throw ArgumentError("at least one trial is required");
  if (cfg.horizon < 2 || cfg.horizon > panel.horizon())
    throw ArgumentError("horizon must be in [2, " + std::to_string(panel.horizon()) + "]");
  if (panel.individuals() < cfg.n + 1)
    throw ArgumentError("panel has " + std::to_string(panel.individuals()) +
                        " individuals; the game needs at least " +
                        std::to_string(cfg.n + 1));

  // Mechanism for the mean query, synthesized from the budget. An infinite
  // budget publishes the exact aggregate.
  std::optional<QuantizerSpec> quant;
  if (std::isfinite(cfg.epsilon)) {
    double peak = panel.max_value();
    Rational bound = peak > 0.0 ? Rational(peak) : Rational(1);
    std::vector<Domain> domains(cfg.n, IntervalUnion::single(0, bound));
    DatasetSpec dataset(std::move(domains), QuerySpec::mean());
    quant = synthesize_quantizer(dataset, cfg.epsilon).quantizer;
  }

  const size_t population = panel.individuals();
  const size_t horizon = cfg.horizon;
  GameResult result;
  result.trials = cfg.trials;

  std::vector<size_t> group(cfg.n);
  std::vector<double> published(horizon);
  std::vector<double> candidate0(horizon), candidate1(horizon);

  for (uint64_t trial = 0; trial < cfg.trials; ++trial) {
    Rng rng(substream_seed(cfg.seed, trial));

    size_t i0 = rng.uniform_index(population);
    size_t i1 = rng.uniform_index(population - 1);
    if (i1 >= i0) ++i1;
    int j = static_cast<int>(rng.uniform_index(2));

    group[0] = (j == 0) ? i0 : i1;
    for (size_t k = 1; k < cfg.n; ++k) {
      size_t pick;
      bool fresh;
      do {
        pick = rng.uniform_index(population);
        fresh = pick != i0 && pick != i1;
        for (size_t m = 1; m < k && fresh; ++m) fresh = pick != group[m];
      } while (!fresh);
      group[k] = pick;
    }

    for (size_t t = 0; t < horizon; ++t) {
      double sum = 0.0;
      for (size_t member : group) sum += panel.profiles[member][t];
      double mean = sum / static_cast<double>(cfg.n);
      published[t] = quant ? quant->midpoint(quant->cell_index_clamped(mean)) : mean;
      candidate0[t] = panel.profiles[i0][t];
      candidate1[t] = panel.profiles[i1][t];
    }

    int guess = policy_decide(cfg.policy, candidate0, candidate1, published, &result.ties,
                              &result.correlation_fallbacks);
    if (guess == j) ++result.wins;
  }

  double p = static_cast<double>(result.wins) / static_cast<double>(result.trials);
  result.adv = 2.0 * std::fabs(p - 0.5);
  result.ci_halfwidth =
      2.0 * 1.96 * std::sqrt(p * (1.0 - p) / static_cast<double>(result.trials));
  return result;
}

ProfilePanel synthesize_panel(size_t count, size_t horizon, uint64_t seed) {
  if (count < 2) throw ArgumentError("a panel needs at least two individuals");
  if (horizon < 2) throw ArgumentError("a panel needs at least two time steps");

  ProfilePanel panel;
  panel.ids.reserve(count);
  panel.profiles.reserve(count);
  const double h = static_cast<double>(horizon);

  // Daily shape shared by the whole population: a modest morning bump and a
  // tall, sharp evening peak, with per-individual base, scale and noise on
  // top. The common shape dominates and the peak keeps the quantizer cells
  // coarse relative to the typical band, so aggregates of different groups
  // look alike.
  const double morning = 0.30 * h;
  const double evening = 0.72 * h;

  for (size_t i = 0; i < count; ++i) {
    Rng rng(substream_seed(seed, i));
    double base = rng.uniform(0.78, 0.84);
    double amp1 = 1.0 * rng.uniform(0.988, 1.012);
    double amp2 = 5.0 * rng.uniform(0.988, 1.012);

    std::vector<double> series(horizon);
    for (size_t t = 0; t < horizon; ++t) {
      double x = static_cast<double>(t);
      double bump1 = amp1 * std::exp(-0.5 * std::pow((x - morning) / 2.2, 2.0));
      double bump2 = amp2 * std::exp(-0.5 * std::pow((x - evening) / 1.0, 2.0));
      double noise = rng.uniform(-0.008, 0.008);
      series[t] = std::max(0.0, base + bump1 + bump2 + noise);
    }
    panel.ids.push_back("id" + std::to_string(i + 1));
    panel.profiles.push_back(std::move(series));
  }
  return panel;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.push_back("");
  return cells;
}

double parse_cell(const std::string& cell, size_t row, size_t col) {
  if (cell.empty())
    throw FormatError("empty cell at row " + std::to_string(row) + ", column " +
                      std::to_string(col));
  char* end = nullptr;
  double v = std::strtod(cell.c_str(), &end);
  if (end != cell.c_str() + cell.size())
    throw FormatError("non-numeric cell '" + cell + "' at row " + std::to_string(row) +
                      ", column " + std::to_string(col));
  if (!std::isfinite(v) || v < 0.0)
    throw FormatError("consumption values must be finite and non-negative; got '" + cell +
                      "' at row " + std::to_string(row) + ", column " + std::to_string(col));
  return v;
}

}  // namespace

ProfilePanel ingest_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open panel file '" + path + "'");

  std::string line;
  if (!std::getline(in, line)) throw FormatError("panel file '" + path + "' is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();

  std::vector<std::string> header = split_csv_line(line);
  if (header.size() < 2 || header[0] != "time")
    throw FormatError("panel header must be 'time,id1,id2,...', got '" + line + "'");

  ProfilePanel panel;
  panel.ids.assign(header.begin() + 1, header.end());
  panel.profiles.assign(panel.ids.size(), {});

  size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> cells = split_csv_line(line);
    if (cells.size() != header.size())
      throw FormatError("row " + std::to_string(row) + " has " +
                        std::to_string(cells.size()) + " cells, expected " +
                        std::to_string(header.size()));
    for (size_t c = 1; c < cells.size(); ++c)
      panel.profiles[c - 1].push_back(parse_cell(cells[c], row, c + 1));
  }
  if (panel.horizon() == 0)
    throw FormatError("panel file '" + path + "' has no data rows");
  return panel;
}

std::string panel_to_csv(const ProfilePanel& panel) {
  std::string out = "time";
  for (const auto& id : panel.ids) out += "," + id;
  out += "\n";
  char buf[64];
  for (size_t t = 0; t < panel.horizon(); ++t) {
    out += std::to_string(t);
    for (const auto& series : panel.profiles) {
      std::snprintf(buf, sizeof(buf), "%.10g", series[t]);
      out += ",";
      out += buf;
    }
    out += "\n";
  }
  return out;
}

std::string game_result_csv_header() { return "policy,n,epsilon,trials,adv,ci_halfwidth\n"; }

std::string game_result_csv_row(const GameConfig& cfg, const GameResult& result) {
  return policy_name(cfg.policy) + "," + std::to_string(cfg.n) + "," +
         format_double(cfg.epsilon) + "," + std::to_string(result.trials) + "," +
         format_double(result.adv) + "," + format_double(result.ci_halfwidth) + "\n";
}

}  // namespace npriv
