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

#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <limits>

#include "npriv/errors.hpp"

namespace npriv {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

class TempFile {
 public:
  explicit TempFile(const std::string& content) {
    path_ = ::testing::TempDir() + "npriv_panel_" +
            std::to_string(reinterpret_cast<uintptr_t>(this)) + ".csv";
    std::ofstream out(path_);
    out << content;
  }
  ~TempFile() { std::remove(path_.c_str()); }
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

TEST(SynthesizePanelTest, DeterministicAndNonNegative) {
  ProfilePanel a = synthesize_panel(10, 48, 1);
  ProfilePanel b = synthesize_panel(10, 48, 1);
  EXPECT_EQ(a.profiles, b.profiles);
  EXPECT_EQ(a.individuals(), 10u);
  EXPECT_EQ(a.horizon(), 48u);
  for (const auto& series : a.profiles)
    for (double v : series) EXPECT_GE(v, 0.0);

  ProfilePanel c = synthesize_panel(10, 48, 2);
  EXPECT_NE(a.profiles, c.profiles);

  EXPECT_THROW(synthesize_panel(1, 48, 1), ArgumentError);
  EXPECT_THROW(synthesize_panel(10, 1, 1), ArgumentError);
}

TEST(PolicyTest, ExactMatchWinsUnderAllPolicies) {
  ProfilePanel panel = synthesize_panel(5, 48, 3);
  const auto& c0 = panel.profiles[0];
  const auto& c1 = panel.profiles[1];
  uint64_t ties = 0, fallbacks = 0;
  for (AdversaryPolicy policy :
       {AdversaryPolicy::correlation, AdversaryPolicy::mse, AdversaryPolicy::peaks}) {
    EXPECT_EQ(policy_decide(policy, c0, c1, c0, &ties, &fallbacks), 0)
        << policy_name(policy);
  }
  EXPECT_EQ(fallbacks, 0u);
}

TEST(PolicyTest, CorrelationIgnoresConstantShifts) {
  std::vector<double> c0{1.0, 2.0, 0.5};
  std::vector<double> c1{0.2, 0.6, 0.4};
  std::vector<double> published{0.2 + 5.0, 0.6 + 5.0, 0.4 + 5.0};
  uint64_t ties = 0, fallbacks = 0;
  EXPECT_EQ(policy_decide(AdversaryPolicy::correlation, c0, c1, published, &ties,
                          &fallbacks),
            1);
  EXPECT_EQ(fallbacks, 0u);
}

TEST(PolicyTest, FlatPublishedSeriesFallsBackOrTies) {
  std::vector<double> c0{1.0, 2.0, 1.5, 0.5};
  std::vector<double> c1{0.9, 2.2, 1.4, 0.6};
  std::vector<double> flat{1.0, 1.0, 1.0, 1.0};

  uint64_t ties = 0, fallbacks = 0;
  policy_decide(AdversaryPolicy::correlation, c0, c1, flat, &ties, &fallbacks);
  EXPECT_EQ(fallbacks, 1u);  // zero-variance published series scored by mse

  ties = 0;
  EXPECT_EQ(policy_decide(AdversaryPolicy::peaks, c0, c1, flat, &ties, &fallbacks), 0);
  EXPECT_EQ(ties, 1u);  // no peaks anywhere: tie-break to 0
}

TEST(RelativePeaksTest, StrictInteriorMaximaAboveMedianLevel) {
  //                     0    1    2    3    4    5    6
  std::vector<double> s{1.0, 3.0, 1.0, 1.1, 1.0, 2.9, 1.0};
  std::vector<size_t> peaks = relative_peaks(s);
  ASSERT_EQ(peaks.size(), 2u);  // 1.1 is a local max but below 1.2 * median
  EXPECT_EQ(peaks[0], 1u);
  EXPECT_EQ(peaks[1], 5u);
  EXPECT_TRUE(relative_peaks({1.0, 1.0}).empty());
}

TEST(PlayGameTest, DeterministicGivenSeed) {
  ProfilePanel panel = synthesize_panel(20, 48, 5);
  GameConfig cfg;
  cfg.n = 2;
  cfg.epsilon = 2.0;
  cfg.horizon = 48;
  cfg.trials = 200;
  cfg.seed = 11;
  cfg.policy = AdversaryPolicy::correlation;
  GameResult a = play_game(panel, cfg);
  GameResult b = play_game(panel, cfg);
  EXPECT_EQ(a.wins, b.wins);
  EXPECT_DOUBLE_EQ(a.adv, b.adv);
  EXPECT_GE(a.adv, 0.0);
  EXPECT_LE(a.adv, 1.0);
}

TEST(PlayGameTest, IdentityAggregateOfOneRevealsTheProfile) {
  ProfilePanel panel = synthesize_panel(30, 48, 6);
  GameConfig cfg;
  cfg.n = 1;
  cfg.epsilon = kInf;
  cfg.horizon = 48;
  cfg.trials = 300;
  cfg.seed = 13;
  for (AdversaryPolicy policy : {AdversaryPolicy::correlation, AdversaryPolicy::mse}) {
    cfg.policy = policy;
    GameResult result = play_game(panel, cfg);
    EXPECT_GT(result.adv, 0.9) << policy_name(policy);
  }
}

TEST(PlayGameTest, ConstantOutputGivesNoAdvantage) {
  // epsilon so small that the synthesized quantizer has a single cell.
  ProfilePanel panel = synthesize_panel(30, 48, 6);
  GameConfig cfg;
  cfg.n = 2;
  cfg.epsilon = 0.5;
  cfg.horizon = 48;
  cfg.trials = 2000;
  cfg.seed = 17;
  cfg.policy = AdversaryPolicy::mse;
  GameResult result = play_game(panel, cfg);
  EXPECT_LE(result.adv, 2.0 * result.ci_halfwidth + 0.05);
}

TEST(PlayGameTest, LabelSwapLeavesAdvantageWithinConfidence) {
  ProfilePanel panel = synthesize_panel(40, 48, 21);
  GameConfig cfg;
  cfg.n = 2;
  cfg.epsilon = 4.0;
  cfg.horizon = 48;
  cfg.trials = 1500;
  cfg.seed = 19;
  cfg.policy = AdversaryPolicy::correlation;
  GameResult base = play_game(panel, cfg);

  // Swapping the candidate labels is the same game, relabeled: run with the
  // panel's first two profiles exchanged so candidate draws swap roles.
  ProfilePanel swapped = panel;
  std::swap(swapped.profiles[0], swapped.profiles[1]);
  std::swap(swapped.ids[0], swapped.ids[1]);
  GameResult flipped = play_game(swapped, cfg);
  EXPECT_NEAR(base.adv, flipped.adv, base.ci_halfwidth + flipped.ci_halfwidth);
}

TEST(PlayGameTest, ValidatesArguments) {
  ProfilePanel panel = synthesize_panel(4, 16, 1);
  GameConfig cfg;
  cfg.n = 4;  // needs n + 1 = 5 individuals
  cfg.epsilon = 1.0;
  cfg.horizon = 16;
  cfg.trials = 10;
  cfg.seed = 1;
  EXPECT_THROW(play_game(panel, cfg), ArgumentError);
  cfg.n = 2;
  cfg.horizon = 99;
  EXPECT_THROW(play_game(panel, cfg), ArgumentError);
}

TEST(IngestCsvTest, WellFormedRoundTrip) {
  TempFile file("time,id1,id2\n0,1.5,2.5\n1,0.5,0.25\n2,1.0,2.0\n");
  ProfilePanel panel = ingest_csv(file.path());
  EXPECT_EQ(panel.individuals(), 2u);
  EXPECT_EQ(panel.horizon(), 3u);
  EXPECT_DOUBLE_EQ(panel.profiles[1][1], 0.25);

  TempFile round(panel_to_csv(panel));
  ProfilePanel again = ingest_csv(round.path());
  EXPECT_EQ(again.profiles, panel.profiles);
}

TEST(IngestCsvTest, RejectsMalformedInputs) {
  TempFile bad_cell("time,id1,id2\n0,1.0,2.0\n1,1.0,abc\n");
  try {
    ingest_csv(bad_cell.path());
    FAIL() << "expected FormatError";
  } catch (const FormatError& e) {
    EXPECT_NE(std::string(e.what()).find("row 3"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("column 3"), std::string::npos);
  }

  TempFile ragged("time,id1,id2\n0,1.0\n");
  EXPECT_THROW(ingest_csv(ragged.path()), FormatError);

  TempFile empty("");
  EXPECT_THROW(ingest_csv(empty.path()), FormatError);

  TempFile header_only("time,id1\n");
  EXPECT_THROW(ingest_csv(header_only.path()), FormatError);

  TempFile bad_header("when,id1\n0,1.0\n");
  EXPECT_THROW(ingest_csv(bad_header.path()), FormatError);

  TempFile negative("time,id1\n0,-1.0\n");
  EXPECT_THROW(ingest_csv(negative.path()), FormatError);

  EXPECT_THROW(ingest_csv("/nonexistent/panel.csv"), FormatError);
}

TEST(GameCsvTest, RowShape) {
  GameConfig cfg;
  cfg.n = 4;
  cfg.epsilon = 2.0;
  cfg.policy = AdversaryPolicy::mse;
  GameResult result;
  result.trials = 100;
  result.wins = 60;
  result.adv = 0.2;
  result.ci_halfwidth = 0.05;
  EXPECT_EQ(game_result_csv_header(), "policy,n,epsilon,trials,adv,ci_halfwidth\n");
  EXPECT_EQ(game_result_csv_row(cfg, result), "mse,4,2.0,100,0.2,0.05\n");
}

}  // namespace
}  // namespace npriv
