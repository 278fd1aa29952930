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
//
// End-to-end verification suite. Each test checks one release criterion at
// its stated tolerance and prints a single PASS/FAIL line.

#include <gtest/gtest.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <set>
#include <string>
#include <sys/wait.h>

#include "npriv/auditor.hpp"
#include "npriv/games.hpp"
#include "npriv/info_measures.hpp"
#include "npriv/mechanisms.hpp"
#include "test_util.hpp"

namespace npriv {
namespace {

constexpr double kSlack = 1e-9;

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

void report(const char* name, bool pass, const std::string& detail) {
  std::printf("[ACCEPTANCE] %s: %s (%s)\n", name, pass ? "PASS" : "FAIL", detail.c_str());
  EXPECT_TRUE(pass) << name << ": " << detail;
}

// 1. Audited budgets equal an independent naive re-enumeration exactly on 500
//    random finite instances; runtime below 30 s.
TEST(Acceptance, C01_ExactAuditMatchesNaiveOracle) {
  Stopwatch timer;
  Rng rng(101);
  int mismatches = 0;
  for (int trial = 0; trial < 500; ++trial) {
    DatasetSpec ds = testing::random_finite_dataset(rng, 3, 5);
    MechanismSpec mech = testing::random_mechanism(rng, ds);
    AuditReport audited = audit(ds, mech);
    uint64_t expected = testing::naive_worst_output_count(ds, mech);
    if (audited.max_count != expected) ++mismatches;
  }
  double elapsed = timer.seconds();
  report("C1 definition-1 oracle equivalence", mismatches == 0 && elapsed < 30.0,
         std::to_string(mismatches) + " mismatches in 500 instances, " +
             std::to_string(elapsed) + " s");
}

// 2. Information chain 0 <= I* <= L0s <= L0(Y;X_i) <= eps* on 1000 random
//    instances; runtime below 60 s.
TEST(Acceptance, C02_InformationChain) {
  Stopwatch timer;
  Rng rng(102);
  int violations = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    DatasetSpec ds = testing::random_finite_dataset(rng, 3, 5);
    MechanismSpec mech = testing::random_mechanism(rng, ds);
    size_t i = rng.uniform_index(ds.n());
    try {
      theorem1_check(ds, mech, i, testing::random_others(rng, ds, i));
    } catch (const InternalError&) {
      ++violations;
    }
  }
  double elapsed = timer.seconds();
  report("C2 information chain", violations == 0 && elapsed < 60.0,
         std::to_string(violations) + " violations in 1000 instances, " +
             std::to_string(elapsed) + " s");
}

// 3. Synthesized quantizers audit within their budget on 200 random affine
//    queries at four budgets.
TEST(Acceptance, C03_SynthesisSoundness) {
  Rng rng(103);
  int violations = 0;
  const double budgets[] = {0.5, 1.0, 2.0, 3.0};
  for (int trial = 0; trial < 200; ++trial) {
    DatasetSpec ds = testing::random_interval_dataset(rng, 3);
    double epsilon = budgets[trial % 4];
    SynthesisResult synth = synthesize_quantizer(ds, epsilon);
    AuditReport audited = audit(ds, MechanismSpec::quantizer(synth.quantizer));
    if (audited.epsilon_star > epsilon + kSlack) ++violations;
  }
  report("C3 synthesis soundness", violations == 0,
         std::to_string(violations) + " violations in 200 trials");
}

// 4. Composition budgets add and post-processing never increases the audited
//    budget, 200 random trials each.
TEST(Acceptance, C04_CompositionAndPostprocessing) {
  Rng rng(104);
  int compose_violations = 0;
  for (int trial = 0; trial < 200; ++trial) {
    DatasetSpec ds = testing::random_finite_dataset(rng, 3, 4);
    MechanismSpec m1 = testing::random_mechanism(rng, ds);
    MechanismSpec m2 = testing::random_mechanism(rng, ds);
    double separate = compose_budget(audit(ds, m1).epsilon_star, audit(ds, m2).epsilon_star);
    double joint = audit(ds, MechanismSpec::compose({m1, m2})).epsilon_star;
    if (joint > separate + kSlack) ++compose_violations;
  }

  int post_violations = 0;
  const char* labels[] = {"u", "v", "w"};
  for (int trial = 0; trial < 200; ++trial) {
    DatasetSpec ds = testing::random_finite_dataset(rng, 3, 4);
    MechanismSpec mech = testing::random_mechanism(rng, ds);
    // Collect the realized output alphabet, then relabel it at random.
    std::set<Value> alphabet;
    for (TupleEnumerator it(ds.domains()); !it.done(); it.advance())
      alphabet.insert(apply(mech, ds, it.value()));
    MechanismSpec::PostprocessMap relabel;
    for (const auto& y : alphabet)
      relabel[y] = Value::symbol(labels[rng.uniform_index(3)]);
    // The inner alphabet may exceed the realized one; make the map total.
    if (auto full = mech.finite_outputs())
      for (const auto& y : *full)
        if (relabel.find(y) == relabel.end())
          relabel[y] = Value::symbol(labels[rng.uniform_index(3)]);

    double inner = audit(ds, mech).epsilon_star;
    double outer = audit(ds, MechanismSpec::postprocess(mech, relabel)).epsilon_star;
    if (outer > inner + kSlack) ++post_violations;
  }

  report("C4 composition and post-processing",
         compose_violations == 0 && post_violations == 0,
         std::to_string(compose_violations) + " composition / " +
             std::to_string(post_violations) + " post-processing violations");
}

// 5. Zero-error rates of channels induced by audited mechanisms stay within
//    the budget for block lengths 1..3; pentagon regression values are exact.
TEST(Acceptance, C05_ZeroErrorRates) {
  Rng rng(105);
  int violations = 0;
  int built = 0;
  while (built < 50) {
    DatasetSpec ds = testing::random_finite_dataset(rng, 2, 5);
    MechanismSpec mech = testing::random_mechanism(rng, ds);
    double eps = audit(ds, mech).epsilon_star;
    ChannelSpec channel = induced_uncertain_channel(ds, mech, rng.uniform_index(ds.n()));
    ++built;
    for (size_t k = 1; k <= 3; ++k) {
      ZeroErrorCode code = zero_error_code_search(channel, k);
      if (code.rate_bits > eps + kSlack) ++violations;
    }
  }

  ChannelSpec pentagon = ChannelSpec::cyclic(5);
  ZeroErrorCode k1 = zero_error_code_search(pentagon, 1);
  ZeroErrorCode k2 = zero_error_code_search(pentagon, 2);
  bool pentagon_ok = k1.size == 2 && k2.size == 5 &&
                     std::fabs(k2.rate_bits - std::log2(5.0) / 2.0) < 1e-4;

  report("C5 zero-error rates within budget", violations == 0 && pentagon_ok,
         std::to_string(violations) + " rate violations over 50 channels; pentagon |F|=" +
             std::to_string(k1.size) + "," + std::to_string(k2.size));
}

// 6. Two-point test performance never beats log2|delta| nor the budget, 500
//    random trials.
TEST(Acceptance, C06_HypothesisTestingBound) {
  Rng rng(106);
  int violations = 0;
  int trials = 0;
  while (trials < 500) {
    DatasetSpec ds = testing::random_finite_dataset(rng, 3, 5);
    size_t i = rng.uniform_index(ds.n());
    const auto& di = std::get<FiniteRange>(ds.domain(i));
    if (di.size() < 2) continue;
    MechanismSpec mech = testing::random_mechanism(rng, ds);
    size_t a = rng.uniform_index(di.size());
    size_t b = rng.uniform_index(di.size() - 1);
    if (b >= a) ++b;
    HypothesisReport rep = hypothesis_analysis(ds, mech, i, di[a], di[b],
                                               testing::random_others(rng, ds, i));
    ++trials;
    if (!rep.distinguishable) continue;
    double eps = audit(ds, mech).epsilon_star;
    if (rep.best_test_bits > rep.bound_bits + kSlack || rep.bound_bits > eps + kSlack)
      ++violations;
  }
  report("C6 hypothesis-testing bound", violations == 0,
         std::to_string(violations) + " violations in 500 trials");
}

// 7. Estimation-error floors: uniform prior on [0,1], q = 2^eps for eps in
//    {1,2,3}, moments p in {1,2}, 1e5 trials per cell; the (eps=1, p=2) cell
//    reproduces the analytic MSE of 1/48 within 5%.
TEST(Acceptance, C07_EstimationErrorFloor) {
  DatasetSpec ds({IntervalUnion::single(0, 1)}, QuerySpec::mean());
  PriorSpec uniform = PriorSpec::uniform(IntervalUnion::single(0, 1));

  bool all_pass = true;
  double mse_cell = 0.0;
  std::string detail;
  for (int eps = 1; eps <= 3; ++eps) {
    auto q = static_cast<int64_t>(1) << eps;
    MechanismSpec mech = MechanismSpec::quantizer(QuantizerSpec(q, 0, 1));
    for (unsigned p = 1; p <= 2; ++p) {
      MomentBoundCheck check = theorem4_check(ds, mech, 0, uniform, p, 100000,
                                              1000 + static_cast<uint64_t>(10 * eps + p));
      all_pass = all_pass && check.pass;
      if (eps == 1 && p == 2) mse_cell = check.empirical_moment;
    }
  }
  bool mse_ok = std::fabs(mse_cell - 1.0 / 48.0) <= 0.05 / 48.0;
  report("C7 estimation-error floor", all_pass && mse_ok,
         "all cells above bound: " + std::string(all_pass ? "yes" : "no") +
             ", MSE cell = " + std::to_string(mse_cell) + " vs 1/48");
}

// 8. Maximal leakage of induced channels stays within the budget for 200
//    random finite instances with random priors.
TEST(Acceptance, C08_MaximalLeakageBound) {
  Rng rng(108);
  int violations = 0;
  for (int trial = 0; trial < 200; ++trial) {
    DatasetSpec ds = testing::random_finite_dataset(rng, 3, 5);
    MechanismSpec mech = testing::random_mechanism(rng, ds);
    size_t i = rng.uniform_index(ds.n());
    const auto& di = std::get<FiniteRange>(ds.domain(i));

    // Random positive masses, normalized exactly.
    std::vector<double> masses(di.size());
    double total = 0.0;
    for (auto& m : masses) {
      m = 1.0 + static_cast<double>(rng.uniform_index(9));
      total += m;
    }
    double acc = 0.0;
    for (size_t k = 0; k + 1 < masses.size(); ++k) {
      masses[k] /= total;
      acc += masses[k];
    }
    masses.back() = 1.0 - acc;

    LeakageBoundCheck check = theorem5_check(ds, mech, i, testing::random_others(rng, ds, i),
                                             PriorSpec::finite(di, masses));
    if (!check.pass) ++violations;
  }
  report("C8 maximal leakage bound", violations == 0,
         std::to_string(violations) + " violations in 200 trials");
}

// 9. Membership-inference game on a 300-profile synthetic panel, 2000 trials:
//    (a) negligible advantage at (n=4, eps=2) and (n=8, eps=3);
//    (b) near-certain identification at (n=1, identity) for correlation/mse;
//    (c) advantage non-decreasing in eps within confidence, per policy;
//    runtime below 5 minutes.
TEST(Acceptance, C09_GameQualitativeReproduction) {
  Stopwatch timer;
  ProfilePanel panel = synthesize_panel(300, 48, 1);
  const AdversaryPolicy policies[] = {AdversaryPolicy::correlation, AdversaryPolicy::mse,
                                      AdversaryPolicy::peaks};

  auto run = [&](size_t n, double epsilon, AdversaryPolicy policy) {
    GameConfig cfg;
    cfg.n = n;
    cfg.epsilon = epsilon;
    cfg.horizon = 48;
    cfg.trials = 2000;
    cfg.seed = 7;
    cfg.policy = policy;
    return play_game(panel, cfg);
  };

  bool small_ok = true;
  for (AdversaryPolicy policy : policies) {
    small_ok = small_ok && run(4, 2.0, policy).adv <= 0.15;
    small_ok = small_ok && run(8, 3.0, policy).adv <= 0.15;
  }

  double inf = std::numeric_limits<double>::infinity();
  bool identity_ok = run(1, inf, AdversaryPolicy::correlation).adv >= 0.8 &&
                     run(1, inf, AdversaryPolicy::mse).adv >= 0.8;

  bool monotone_ok = true;
  for (AdversaryPolicy policy : policies) {
    GameResult prev = run(4, 1.0, policy);
    for (int eps = 2; eps <= 8; ++eps) {
      GameResult next = run(4, static_cast<double>(eps), policy);
      if (next.adv < prev.adv - (prev.ci_halfwidth + next.ci_halfwidth))
        monotone_ok = false;
      prev = next;
    }
  }

  double elapsed = timer.seconds();
  report("C9 game qualitative reproduction",
         small_ok && identity_ok && monotone_ok && elapsed < 300.0,
         std::string("small-eps ") + (small_ok ? "ok" : "FAIL") + ", identity " +
             (identity_ok ? "ok" : "FAIL") + ", monotone " +
             (monotone_ok ? "ok" : "FAIL") + ", " + std::to_string(elapsed) + " s");
}

// 10. The documented CLI invocations are byte-identical across two runs.
TEST(Acceptance, C10_CliGoldenDeterminism) {
  auto run_cli = [](const std::string& args) {
    std::string cmd = std::string(NPRIV_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    std::string output;
    if (pipe != nullptr) {
      char buf[4096];
      size_t got;
      while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) output.append(buf, got);
      int status = pclose(pipe);
      if (!WIFEXITED(status) || WEXITSTATUS(status) != 0) output += "\n[nonzero exit]";
    }
    return output;
  };

  const std::string commands[] = {
      "audit --domains \"0,1;0,1\" --query mean --mech identity",
      "synth --epsilon 2 --ymin 0 --ymax 1 --sens 0.25",
      "game --policy correlation --n 4 --epsilon 2 --trials 2000 --seed 7 "
      "--panel synthetic:300x48:1",
  };
  bool identical = true;
  bool nonempty = true;
  for (const auto& cmd : commands) {
    std::string first = run_cli(cmd);
    std::string second = run_cli(cmd);
    identical = identical && first == second;
    nonempty = nonempty && !first.empty() && first.find("[nonzero exit]") == std::string::npos;
  }
  report("C10 CLI golden determinism", identical && nonempty,
         identical ? "3 commands byte-identical" : "outputs differ between runs");
}

}  // namespace
}  // namespace npriv
