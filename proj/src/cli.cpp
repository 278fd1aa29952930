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

#include "npriv/cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "npriv/auditor.hpp"
#include "npriv/errors.hpp"
#include "npriv/format.hpp"
#include "npriv/games.hpp"
#include "npriv/info_measures.hpp"
#include "npriv/mechanisms.hpp"
#include "npriv/serialize.hpp"

namespace npriv::cli {

namespace {

void write_output(const std::string& content, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << content;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw ArgumentError("cannot open output file '" + path + "'");
  file << content;
}

Rational parse_rational_flag(const std::string& text, const std::string& what) {
  auto r = parse_rational(text);
  if (!r) throw FormatError("cannot parse " + what + " '" + text + "' as a number");
  return *r;
}

// "1,2,3" or "1:8" (inclusive integer range) or "inf".
std::vector<double> parse_epsilon_list(const std::string& text) {
  std::vector<double> eps;
  if (auto colon = text.find(':'); colon != std::string::npos) {
    int lo = std::stoi(text.substr(0, colon));
    int hi = std::stoi(text.substr(colon + 1));
    if (lo > hi) throw FormatError("epsilon range '" + text + "' has lo > hi");
    for (int e = lo; e <= hi; ++e) eps.push_back(e);
    return eps;
  }
  std::string token;
  std::stringstream ss(text);
  while (std::getline(ss, token, ',')) {
    if (token == "inf") {
      eps.push_back(std::numeric_limits<double>::infinity());
    } else {
      eps.push_back(to_double(parse_rational_flag(token, "epsilon")));
    }
  }
  if (eps.empty()) throw FormatError("empty epsilon list");
  return eps;
}

std::vector<size_t> parse_size_list(const std::string& text, const std::string& what) {
  std::vector<size_t> out;
  std::string token;
  std::stringstream ss(text);
  while (std::getline(ss, token, ',')) {
    int v = std::stoi(token);
    if (v < 1) throw FormatError(what + " must be positive");
    out.push_back(static_cast<size_t>(v));
  }
  if (out.empty()) throw FormatError("empty " + what + " list");
  return out;
}

// "synthetic:COUNTxHORIZON:SEED" or a CSV path.
ProfilePanel load_panel(const std::string& spec) {
  if (spec.rfind("synthetic:", 0) == 0) {
    std::string body = spec.substr(10);
    auto x = body.find('x');
    auto colon = body.find(':', x == std::string::npos ? 0 : x);
    if (x == std::string::npos || colon == std::string::npos)
      throw FormatError("synthetic panel must be synthetic:COUNTxHORIZON:SEED");
    size_t count = static_cast<size_t>(std::stoull(body.substr(0, x)));
    size_t horizon = static_cast<size_t>(std::stoull(body.substr(x + 1, colon - x - 1)));
    uint64_t seed = std::stoull(body.substr(colon + 1));
    return synthesize_panel(count, horizon, seed);
  }
  return ingest_csv(spec);
}

struct CommonFlags {
  std::string output;
  std::string format = "text";
};

void add_common(CLI::App* cmd, CommonFlags* flags) {
  cmd->add_option("--output", flags->output, "write the report to this path");
  cmd->add_option("--format", flags->format, "report format")
      ->check(CLI::IsMember({"text", "csv"}));
}

int run_audit(const std::string& domains_text, const std::string& query_text,
              const std::string& mech_text, const std::string& ymin,
              const std::string& ymax, const std::string& grid_step, bool local,
              const CommonFlags& flags, std::ostream& out) {
  QuerySpec query = parse_query(query_text);
  if (!ymin.empty() || !ymax.empty()) {
    if (ymin.empty() || ymax.empty())
      throw ArgumentError("--ymin and --ymax must be given together");
    query = query.with_output_bounds(parse_rational_flag(ymin, "--ymin"),
                                     parse_rational_flag(ymax, "--ymax"));
  }
  DatasetSpec dataset(parse_domains(domains_text), query);
  MechanismSpec mech = parse_mechanism(mech_text, dataset.output_bounds());

  AuditOptions options;
  if (!grid_step.empty())
    options.grid_step = parse_rational_flag(grid_step, "--grid-step");
  AuditReport report =
      local ? audit_local(dataset, mech, options) : audit(dataset, mech, options);
  write_output(flags.format == "csv" ? report.to_csv() : report.to_text(), flags.output,
               out);
  return 0;
}

int run_synth(double epsilon, const std::string& domains_text,
              const std::string& query_text, const std::string& ymin,
              const std::string& ymax, const std::string& sens_text, bool sens_lower_bound,
              const CommonFlags& flags, std::ostream& out) {
  SynthesisResult result = [&] {
    if (!sens_text.empty()) {
      if (ymin.empty() || ymax.empty())
        throw ArgumentError("--sens needs --ymin and --ymax");
      SensitivityResult sens;
      sens.value = parse_rational_flag(sens_text, "--sens");
      sens.method = sens_lower_bound ? SensitivityResult::Method::grid
                                     : SensitivityResult::Method::exact_affine;
      sens.lower_bound = sens_lower_bound;
      if (sens_lower_bound) sens.grid_step = Rational(0);
      return synthesize_from_sensitivity(epsilon,
                                         parse_rational_flag(ymin, "--ymin"),
                                         parse_rational_flag(ymax, "--ymax"), sens);
    }
    if (domains_text.empty())
      throw ArgumentError("synth needs either --sens with bounds or --domains");
    QuerySpec query = parse_query(query_text);
    if (!ymin.empty() && !ymax.empty())
      query = query.with_output_bounds(parse_rational_flag(ymin, "--ymin"),
                                       parse_rational_flag(ymax, "--ymax"));
    DatasetSpec dataset(parse_domains(domains_text), query);
    return synthesize_quantizer(dataset, epsilon);
  }();

  std::string report;
  report += "q = " + std::to_string(result.q) + "\n";
  report += "epsilon = " + format_double(epsilon) + "\n";
  report += "y_min = " + to_string(result.quantizer.x_min()) + "\n";
  report += "y_max = " + to_string(result.quantizer.x_max()) + "\n";
  report += "sensitivity = " + to_string(result.sensitivity.value) + "\n";
  report += "sensitivity_method = " + result.sensitivity.method_name() + "\n";
  if (result.insensitive_query)
    report += "note = query insensitive to every individual; q capped\n";
  if (result.derated) report += "note = lower-bound sensitivity; q derated\n";
  write_output(report, flags.output, out);
  return 0;
}

int run_measure(const std::string& pairs_text, const CommonFlags& flags,
                std::ostream& out) {
  JointRelation rel = parse_relation(pairs_text);
  LeakageResult xy = nonstochastic_leakage(rel, Direction::x_given_y);
  LeakageResult yx = nonstochastic_leakage(rel, Direction::y_given_x);
  MaximinResult maximin = maximin_information(rel);

  std::string report;
  report += "h0_x = " + format_double(hartley_entropy(rel.x_range()).or_neg_inf()) + "\n";
  report += "h0_y = " + format_double(hartley_entropy(rel.y_range()).or_neg_inf()) + "\n";
  report += "l0_x_given_y = " + format_double(xy.leakage_bits) + "\n";
  report += "i0_x_given_y = " + format_double(xy.information_bits) + "\n";
  report += "l0_y_given_x = " + format_double(yx.leakage_bits) + "\n";
  report += "i0_y_given_x = " + format_double(yx.information_bits) + "\n";
  report += "l0_symmetrized = " + format_double(symmetrized_leakage(rel)) + "\n";
  report += "i_star = " + format_double(maximin.bits) + "\n";
  report += "overlap_blocks = " + std::to_string(maximin.partition.blocks.size()) + "\n";
  for (size_t b = 0; b < maximin.partition.blocks.size(); ++b)
    report += "block_" + std::to_string(b + 1) + " = " +
              maximin.partition.blocks[b].to_string() + "\n";
  write_output(report, flags.output, out);
  return 0;
}

int run_hypothesis(const std::string& domains_text, const std::string& query_text,
                   const std::string& mech_text, size_t individual,
                   const std::string& xa, const std::string& xb,
                   const std::string& others_text, const CommonFlags& flags,
                   std::ostream& out) {
  DatasetSpec dataset(parse_domains(domains_text), parse_query(query_text));
  MechanismSpec mech = parse_mechanism(mech_text, dataset.output_bounds());
  if (individual < 1 || individual > dataset.n())
    throw ArgumentError("--i must be in 1.." + std::to_string(dataset.n()));
  HypothesisReport report =
      hypothesis_analysis(dataset, mech, individual - 1, parse_value(xa), parse_value(xb),
                          parse_value_list(others_text));
  write_output(flags.format == "csv" ? report.to_csv() : report.to_text(), flags.output,
               out);
  return 0;
}

int run_capacity(const std::string& inputs, const std::string& outputs, size_t cyclic,
                 size_t k, uint64_t cap, const CommonFlags& flags, std::ostream& out) {
  std::optional<ChannelSpec> channel;
  if (cyclic > 0)
    channel = ChannelSpec::cyclic(cyclic);
  else if (!inputs.empty() && !outputs.empty())
    channel = parse_channel(inputs, outputs);
  else
    throw ArgumentError("capacity needs --cyclic M or both --inputs and --outputs");

  ZeroErrorSearchOptions options;
  if (cap > 0) options.node_cap = cap;
  ZeroErrorCode code = zero_error_code_search(*channel, k, options);

  std::string report;
  report += "k = " + std::to_string(k) + "\n";
  report += "code_size = " + std::to_string(code.size) + "\n";
  report += "rate = " + format_double(code.rate_bits) + "\n";
  for (size_t w = 0; w < code.words.size(); ++w) {
    report += "word_" + std::to_string(w + 1) + " = ";
    for (size_t p = 0; p < code.words[w].size(); ++p) {
      if (p > 0) report += ",";
      report += code.words[w][p].to_string();
    }
    report += "\n";
  }
  write_output(report, flags.output, out);
  return 0;
}

int run_t4check(const std::string& domain_text, const std::string& mech_text,
                unsigned moment_order, uint64_t trials, uint64_t seed,
                const CommonFlags& flags, std::ostream& out) {
  std::vector<Domain> domains = parse_domains(domain_text);
  DatasetSpec dataset(domains, QuerySpec::mean());
  MechanismSpec mech = parse_mechanism(mech_text, dataset.output_bounds());
  if (!domain_is_finite(domains[0])) {
    PriorSpec prior = PriorSpec::uniform(std::get<IntervalUnion>(domains[0]));
    MomentBoundCheck check = theorem4_check(dataset, mech, 0, prior, moment_order, trials, seed);
    write_output(check.to_text(), flags.output, out);
    return check.pass ? 0 : 1;
  }
  throw PreconditionError("t4check needs a continuous interval domain, e.g. 0..1");
}

int run_game(const std::string& panel_spec, const std::string& policy_text,
             const std::string& n_text, const std::string& epsilon_text, uint64_t trials,
             uint64_t seed, size_t horizon, const CommonFlags& flags, std::ostream& out) {
  ProfilePanel panel = load_panel(panel_spec);

  std::vector<AdversaryPolicy> policies;
  if (policy_text == "all")
    policies = {AdversaryPolicy::correlation, AdversaryPolicy::mse, AdversaryPolicy::peaks};
  else
    for (const auto& name : [&] {
           std::vector<std::string> names;
           std::string token;
           std::stringstream ss(policy_text);
           while (std::getline(ss, token, ',')) names.push_back(token);
           return names;
         }())
      policies.push_back(parse_policy(name));

  std::vector<size_t> group_sizes = parse_size_list(n_text, "--n");
  std::vector<double> epsilons = parse_epsilon_list(epsilon_text);

  std::string csv = game_result_csv_header();
  for (AdversaryPolicy policy : policies) {
    for (size_t n : group_sizes) {
      for (double epsilon : epsilons) {
        GameConfig cfg;
        cfg.n = n;
        cfg.epsilon = epsilon;
        cfg.horizon = horizon > 0 ? horizon : panel.horizon();
        cfg.trials = trials;
        cfg.seed = seed;
        cfg.policy = policy;
        GameResult result = play_game(panel, cfg);
        csv += game_result_csv_row(cfg, result);
      }
    }
  }
  write_output(csv, flags.output, out);
  return 0;
}

int run_panel(const std::string& synthetic, uint64_t seed, bool seed_given,
              const std::string& input, const CommonFlags& flags, std::ostream& out) {
  if (!synthetic.empty()) {
    if (!seed_given) throw ArgumentError("panel --synthetic requires --seed");
    auto x = synthetic.find('x');
    if (x == std::string::npos)
      throw FormatError("--synthetic must be COUNTxHORIZON, e.g. 300x48");
    size_t count = static_cast<size_t>(std::stoull(synthetic.substr(0, x)));
    size_t horizon = static_cast<size_t>(std::stoull(synthetic.substr(x + 1)));
    write_output(panel_to_csv(synthesize_panel(count, horizon, seed)), flags.output, out);
    return 0;
  }
  if (!input.empty()) {
    ProfilePanel panel = ingest_csv(input);
    std::string report;
    report += "individuals = " + std::to_string(panel.individuals()) + "\n";
    report += "horizon = " + std::to_string(panel.horizon()) + "\n";
    report += "max_value = " + format_double(panel.max_value()) + "\n";
    write_output(report, flags.output, out);
    return 0;
  }
  throw ArgumentError("panel needs --synthetic COUNTxHORIZON or --input FILE");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"noiseless privacy toolkit: exact audits, measures and games"};
  app.require_subcommand(1);
  app.set_config("--config")->configurable(false);

  // audit
  auto* audit_cmd = app.add_subcommand("audit", "exact privacy audit of a mechanism");
  std::string a_domains, a_query = "mean", a_mech = "identity", a_ymin, a_ymax, a_grid;
  bool a_local = false;
  CommonFlags a_flags;
  audit_cmd->add_option("--domains", a_domains, "per-individual domains")->required();
  audit_cmd->add_option("--query", a_query, "query (mean, sum, affine:..., table:...)");
  audit_cmd->add_option("--mech", a_mech, "mechanism specification");
  audit_cmd->add_option("--ymin", a_ymin, "declared lower output bound");
  audit_cmd->add_option("--ymax", a_ymax, "declared upper output bound");
  audit_cmd->add_option("--grid-step", a_grid, "discretization step for continuous domains");
  audit_cmd->add_flag("--local", a_local, "audit per-coordinate releases");
  add_common(audit_cmd, &a_flags);

  // synth
  auto* synth_cmd = app.add_subcommand("synth", "synthesize quantizer levels from a budget");
  double s_epsilon = 0.0;
  std::string s_domains, s_query = "mean", s_ymin, s_ymax, s_sens;
  bool s_sens_lb = false;
  CommonFlags s_flags;
  synth_cmd->add_option("--epsilon", s_epsilon, "privacy budget in bits")->required();
  synth_cmd->add_option("--domains", s_domains, "per-individual domains");
  synth_cmd->add_option("--query", s_query, "query definition");
  synth_cmd->add_option("--ymin", s_ymin, "lower output bound");
  synth_cmd->add_option("--ymax", s_ymax, "upper output bound");
  synth_cmd->add_option("--sens", s_sens, "query sensitivity (skips the dataset)");
  synth_cmd->add_flag("--sens-lower-bound", s_sens_lb,
                      "treat --sens as a lower bound and derate q");
  add_common(synth_cmd, &s_flags);

  // measure
  auto* measure_cmd = app.add_subcommand("measure", "information measures of a relation");
  std::string m_pairs;
  CommonFlags m_flags;
  measure_cmd->add_option("--pairs", m_pairs, "joint relation, e.g. 1:a,2:a,3:b")
      ->required();
  add_common(measure_cmd, &m_flags);

  // hypothesis
  auto* hyp_cmd = app.add_subcommand("hypothesis", "two-point distinguishing analysis");
  std::string h_domains, h_query = "mean", h_mech = "identity", h_xa, h_xb, h_others;
  size_t h_i = 1;
  CommonFlags h_flags;
  hyp_cmd->add_option("--domains", h_domains, "per-individual domains")->required();
  hyp_cmd->add_option("--query", h_query, "query definition");
  hyp_cmd->add_option("--mech", h_mech, "mechanism specification");
  hyp_cmd->add_option("--i", h_i, "individual under test (1-based)")->required();
  hyp_cmd->add_option("--xa", h_xa, "null-hypothesis value")->required();
  hyp_cmd->add_option("--xb", h_xb, "alternative value")->required();
  hyp_cmd->add_option("--others", h_others, "pinned values of the other individuals");
  add_common(hyp_cmd, &h_flags);

  // capacity
  auto* cap_cmd = app.add_subcommand("capacity", "zero-error code search");
  std::string c_inputs, c_outputs;
  size_t c_cyclic = 0, c_k = 1;
  uint64_t c_cap = 0;
  CommonFlags c_flags;
  cap_cmd->add_option("--inputs", c_inputs, "channel input symbols");
  cap_cmd->add_option("--outputs", c_outputs, "per-input output sets, x:y1,y2;...");
  cap_cmd->add_option("--cyclic", c_cyclic, "cyclic confusability channel on M symbols");
  cap_cmd->add_option("--k", c_k, "block length");
  cap_cmd->add_option("--cap", c_cap, "search node cap");
  add_common(cap_cmd, &c_flags);

  // t4check
  auto* t4_cmd = app.add_subcommand("t4check", "estimation-error floor check");
  std::string t_domain, t_mech;
  unsigned t_p = 2;
  uint64_t t_trials = 100000, t_seed = 0;
  CommonFlags t_flags;
  t4_cmd->add_option("--domain", t_domain, "interval domain, e.g. 0..1")->required();
  t4_cmd->add_option("--mech", t_mech, "mechanism specification")->required();
  t4_cmd->add_option("--p", t_p, "moment order");
  t4_cmd->add_option("--trials", t_trials, "Monte Carlo trials");
  t4_cmd->add_option("--seed", t_seed, "random seed")->required();
  add_common(t4_cmd, &t_flags);

  // game
  auto* game_cmd = app.add_subcommand("game", "membership-inference game");
  std::string g_panel, g_policy = "all", g_n = "1", g_epsilon;
  uint64_t g_trials = 1000, g_seed = 0;
  size_t g_horizon = 0;
  CommonFlags g_flags;
  game_cmd->add_option("--panel", g_panel, "synthetic:CxH:SEED or a CSV path")->required();
  game_cmd->add_option("--policy", g_policy, "correlation, mse, peaks or all");
  game_cmd->add_option("--n", g_n, "aggregate group size(s), comma separated");
  game_cmd->add_option("--epsilon", g_epsilon, "budget(s): list, a:b range, or inf")
      ->required();
  game_cmd->add_option("--trials", g_trials, "trials per grid point");
  game_cmd->add_option("--seed", g_seed, "random seed")->required();
  game_cmd->add_option("--horizon", g_horizon, "time steps (default: whole panel)");
  add_common(game_cmd, &g_flags);

  // panel
  auto* panel_cmd = app.add_subcommand("panel", "synthesize or validate profile panels");
  std::string p_synthetic, p_input;
  uint64_t p_seed = 0;
  CommonFlags p_flags;
  auto* p_seed_opt = panel_cmd->add_option("--seed", p_seed, "random seed");
  panel_cmd->add_option("--synthetic", p_synthetic, "COUNTxHORIZON");
  panel_cmd->add_option("--input", p_input, "CSV panel to validate");
  add_common(panel_cmd, &p_flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      // --help and friends.
      std::ostringstream help;
      int code = app.exit(e, out, err);
      return code;
    }
    err << e.what() << "\n";
    return 1;
  }

  try {
    if (audit_cmd->parsed())
      return run_audit(a_domains, a_query, a_mech, a_ymin, a_ymax, a_grid, a_local,
                       a_flags, out);
    if (synth_cmd->parsed())
      return run_synth(s_epsilon, s_domains, s_query, s_ymin, s_ymax, s_sens, s_sens_lb,
                       s_flags, out);
    if (measure_cmd->parsed()) return run_measure(m_pairs, m_flags, out);
    if (hyp_cmd->parsed())
      return run_hypothesis(h_domains, h_query, h_mech, h_i, h_xa, h_xb, h_others,
                            h_flags, out);
    if (cap_cmd->parsed())
      return run_capacity(c_inputs, c_outputs, c_cyclic, c_k, c_cap, c_flags, out);
    if (t4_cmd->parsed())
      return run_t4check(t_domain, t_mech, t_p, t_trials, t_seed, t_flags, out);
    if (game_cmd->parsed())
      return run_game(g_panel, g_policy, g_n, g_epsilon, g_trials, g_seed, g_horizon,
                      g_flags, out);
    if (panel_cmd->parsed())
      return run_panel(p_synthetic, p_seed, p_seed_opt->count() > 0, p_input, p_flags, out);
    err << "no subcommand selected\n";
    return 1;
  } catch (const InternalError& e) {
    err << "internal error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "unexpected error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace npriv::cli
