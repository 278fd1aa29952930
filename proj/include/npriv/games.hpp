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

#ifndef NPRIV_GAMES_HPP
#define NPRIV_GAMES_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace npriv {

// Rectangular panel of per-individual, per-time consumption values (>= 0).
struct ProfilePanel {
  std::vector<std::string> ids;          // one per individual
  std::vector<std::vector<double>> profiles;  // profiles[individual][time]

  size_t individuals() const { return profiles.size(); }
  size_t horizon() const { return profiles.empty() ? 0 : profiles.front().size(); }
  double max_value() const;
};

enum class AdversaryPolicy { correlation, mse, peaks };

AdversaryPolicy parse_policy(const std::string& name);
std::string policy_name(AdversaryPolicy policy);

// Membership-inference game configuration. epsilon selects a quantizer
// synthesized for the mean query; an infinite epsilon publishes the exact
// aggregate (identity mechanism).
struct GameConfig {
  size_t n = 1;              // aggregate group size
  double epsilon = 1.0;      // budget; +inf means identity mechanism
  size_t horizon = 2;        // time steps used
  uint64_t trials = 1;
  uint64_t seed = 0;
  AdversaryPolicy policy = AdversaryPolicy::correlation;
};

struct GameResult {
  uint64_t wins = 0;
  uint64_t trials = 0;
  double adv = 0.0;                 // 2|wins/trials - 1/2|
  double ci_halfwidth = 0.0;        // 95% confidence half-width on adv
  uint64_t ties = 0;                // tie-breaks that defaulted to j = 0
  uint64_t correlation_fallbacks = 0;  // zero-variance trials scored by mse
};

// One round per trial: the adversary names two candidates, the curator
// aggregates the secret one with n-1 freshly drawn others, publishes the
// mechanism output for every time step, and the adversary guesses from the
// published series.
GameResult play_game(const ProfilePanel& panel, const GameConfig& cfg);

// Policy decision on one trial. Returns 0 or 1; ties resolve to 0 and are
// counted, and a zero-variance correlation falls back to mse for the trial.
int policy_decide(AdversaryPolicy policy, const std::vector<double>& candidate0,
                  const std::vector<double>& candidate1,
                  const std::vector<double>& published, uint64_t* ties,
                  uint64_t* correlation_fallbacks);

// Relative peaks of a series: interior strict local maxima at least 1.2x the
// series median.
std::vector<size_t> relative_peaks(const std::vector<double>& series);

// Deterministic synthetic daily-pattern panel: per-individual base load, two
// activity bumps at individual-specific times, bounded noise, clamped at 0.
ProfilePanel synthesize_panel(size_t count, size_t horizon, uint64_t seed);

// Reads "time,id1,id2,..." CSV; rejects ragged rows, gaps, negatives and
// non-numeric cells with row/column coordinates.
ProfilePanel ingest_csv(const std::string& path);

// Writes a panel in the same CSV layout.
std::string panel_to_csv(const ProfilePanel& panel);

// CSV row "policy,n,epsilon,trials,adv,ci_halfwidth".
std::string game_result_csv_header();
std::string game_result_csv_row(const GameConfig& cfg, const GameResult& result);

}  // namespace npriv

#endif  // NPRIV_GAMES_HPP
