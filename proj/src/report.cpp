// Copyright 2026 The respark Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "respark/experiment.hpp"

namespace respark {

// ordered_json keeps insertion order, which fixes the field order on disk.
using Json = nlohmann::ordered_json;

namespace {

Json to_json(const GeneratorSpec& s) {
  return Json{{"model", to_string(s.model)}, {"n", s.n},         {"p", s.p},
              {"a_min", s.a_min},            {"a_max", s.a_max}, {"seed", s.seed}};
}

GeneratorSpec generator_from(const Json& j) {
  GeneratorSpec s;
  s.model = parse_graph_model(j.at("model").get<std::string>());
  s.n = j.at("n").get<int>();
  s.p = j.at("p").get<double>();
  s.a_min = j.at("a_min").get<double>();
  s.a_max = j.at("a_max").get<double>();
  s.seed = j.at("seed").get<std::uint64_t>();
  return s;
}

Json to_json(const StreamParams& p) {
  Json j{{"epsilon", p.eps},
         {"delta", p.delta},
         {"alpha", p.alpha},
         {"budget_override", nullptr},
         {"resistance_mode", to_string(p.resistance_mode)},
         {"backend", to_string(p.backend)},
         {"no_drop", p.no_drop}};
  if (p.budget_override) j["budget_override"] = *p.budget_override;
  return j;
}

StreamParams params_from(const Json& j) {
  StreamParams p;
  p.eps = j.at("epsilon").get<double>();
  p.delta = j.at("delta").get<double>();
  p.alpha = j.at("alpha").get<double>();
  if (!j.at("budget_override").is_null()) p.budget_override = j.at("budget_override").get<std::int64_t>();
  p.resistance_mode = parse_accuracy_mode(j.at("resistance_mode").get<std::string>());
  p.backend = parse_solver_backend(j.at("backend").get<std::string>());
  p.no_drop = j.at("no_drop").get<bool>();
  return p;
}

Json to_json(const DiagnosticsRecord& d) {
  return Json{{"step", d.step},
              {"copy_count", d.copy_count},
              {"proj_error_norm", d.proj_error_norm},
              {"w_norm", d.w_norm},
              {"budget_n", d.budget_n},
              {"a_event", d.a_event},
              {"b_event", d.b_event},
              {"worst_ratio", d.worst_ratio},
              {"spectral_pass", d.spectral_pass},
              {"reference_connected", d.reference_connected}};
}

DiagnosticsRecord record_from(const Json& j) {
  DiagnosticsRecord d;
  d.step = j.at("step").get<std::uint32_t>();
  d.copy_count = j.at("copy_count").get<std::size_t>();
  d.proj_error_norm = j.at("proj_error_norm").get<double>();
  d.w_norm = j.at("w_norm").get<double>();
  d.budget_n = j.at("budget_n").get<std::int64_t>();
  d.a_event = j.at("a_event").get<bool>();
  d.b_event = j.at("b_event").get<bool>();
  d.worst_ratio = j.at("worst_ratio").get<double>();
  d.spectral_pass = j.at("spectral_pass").get<bool>();
  d.reference_connected = j.at("reference_connected").get<bool>();
  return d;
}

Json to_json(const BinomialInterval& ci) { return Json{{"lower", ci.lower}, {"upper", ci.upper}}; }

BinomialInterval interval_from(const Json& j) {
  return {j.at("lower").get<double>(), j.at("upper").get<double>()};
}

}  // namespace

std::string emit_report_json(const ExperimentReport& r) {
  if (r.config.trials < 1 || r.trial_results.empty()) {
    throw InputError("emit_report: experiment has no trials");
  }
  const ExperimentConfig& c = r.config;
  Json config{{"graph", to_json(c.graph)},
              {"stream", to_json(c.params)},
              {"trials", c.trials},
              {"block_size", nullptr},
              {"master_seed", c.master_seed},
              {"record_timing", c.record_timing}};
  if (c.block_size) config["block_size"] = *c.block_size;

  Json trials = Json::array();
  for (const TrialResult& t : r.trial_results) {
    Json steps = Json::array();
    for (const DiagnosticsRecord& d : t.steps) steps.push_back(to_json(d));
    trials.push_back(Json{{"index", t.index},
                          {"seed", t.seed},
                          {"any_a_event", t.any_a_event},
                          {"any_b_event", t.any_b_event},
                          {"failed", t.failed},
                          {"projection_counterexamples", t.projection_counterexamples},
                          {"max_w_norm", t.max_w_norm},
                          {"w_bound_exceeded", t.w_bound_exceeded},
                          {"final_spectral_pass", t.final_spectral_pass},
                          {"error", t.error},
                          {"steps", std::move(steps)}});
  }
  Json per_step = Json::array();
  for (const StepAggregate& a : r.per_step) {
    per_step.push_back(Json{{"step", a.step},
                            {"trials", a.trials},
                            {"mean_proj_error", a.mean_proj_error},
                            {"max_proj_error", a.max_proj_error},
                            {"mean_w_norm", a.mean_w_norm},
                            {"max_w_norm", a.max_w_norm},
                            {"mean_copy_count", a.mean_copy_count},
                            {"max_copy_count", a.max_copy_count}});
  }

  Json doc{{"schema_version", r.schema_version},
           {"config", std::move(config)},
           {"regime", r.regime},
           {"derived",
            Json{{"n", r.n},
                 {"m", r.m},
                 {"kappa", r.kappa},
                 {"budget_n", r.budget_n},
                 {"theorem_budget", r.theorem_budget},
                 {"w_bound", r.w_bound},
                 {"generator_redraws", r.generator_redraws},
                 {"generator_bridges", r.generator_bridges},
                 {"warnings", r.warnings}}},
           {"summary",
            Json{{"a_failures", r.a_failures},
                 {"b_failures", r.b_failures},
                 {"union_failures", r.union_failures},
                 {"error_trials", r.error_trials},
                 {"w_bound_violations", r.w_bound_violations},
                 {"projection_counterexamples", r.projection_counterexamples},
                 {"final_spectral_failures", r.final_spectral_failures},
                 {"failure_rate", r.failure_rate},
                 {"failure_ci95", to_json(r.failure_ci)},
                 {"a_event_rate", r.a_event_rate},
                 {"a_event_ci95", to_json(r.a_event_ci)}}},
           {"trials", std::move(trials)},
           {"per_step", std::move(per_step)}};
  if (r.wall_clock_seconds) doc["wall_clock_seconds"] = *r.wall_clock_seconds;
  return doc.dump(2) + "\n";
}

ExperimentReport parse_report_json(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("report JSON: ") + e.what());
  }
  try {
    ExperimentReport r;
    r.schema_version = doc.at("schema_version").get<int>();
    if (r.schema_version != kReportSchemaVersion) {
      throw InputError("report JSON: unsupported schema_version " +
                       std::to_string(r.schema_version));
    }
    const Json& c = doc.at("config");
    r.config.graph = generator_from(c.at("graph"));
    r.config.params = params_from(c.at("stream"));
    r.config.trials = c.at("trials").get<std::int64_t>();
    if (!c.at("block_size").is_null()) r.config.block_size = c.at("block_size").get<std::int64_t>();
    r.config.master_seed = c.at("master_seed").get<std::uint64_t>();
    r.config.record_timing = c.at("record_timing").get<bool>();
    r.regime = doc.at("regime").get<std::string>();

    const Json& d = doc.at("derived");
    r.n = d.at("n").get<int>();
    r.m = d.at("m").get<std::int64_t>();
    r.kappa = d.at("kappa").get<double>();
    r.budget_n = d.at("budget_n").get<std::int64_t>();
    r.theorem_budget = d.at("theorem_budget").get<std::int64_t>();
    r.w_bound = d.at("w_bound").get<double>();
    r.generator_redraws = d.at("generator_redraws").get<int>();
    r.generator_bridges = d.at("generator_bridges").get<int>();
    r.warnings = d.at("warnings").get<std::vector<std::string>>();

    const Json& s = doc.at("summary");
    r.a_failures = s.at("a_failures").get<std::int64_t>();
    r.b_failures = s.at("b_failures").get<std::int64_t>();
    r.union_failures = s.at("union_failures").get<std::int64_t>();
    r.error_trials = s.at("error_trials").get<std::int64_t>();
    r.w_bound_violations = s.at("w_bound_violations").get<std::int64_t>();
    r.projection_counterexamples = s.at("projection_counterexamples").get<std::int64_t>();
    r.final_spectral_failures = s.at("final_spectral_failures").get<std::int64_t>();
    r.failure_rate = s.at("failure_rate").get<double>();
    r.failure_ci = interval_from(s.at("failure_ci95"));
    r.a_event_rate = s.at("a_event_rate").get<double>();
    r.a_event_ci = interval_from(s.at("a_event_ci95"));

    for (const Json& t : doc.at("trials")) {
      TrialResult tr;
      tr.index = t.at("index").get<std::int64_t>();
      tr.seed = t.at("seed").get<std::uint64_t>();
      tr.any_a_event = t.at("any_a_event").get<bool>();
      tr.any_b_event = t.at("any_b_event").get<bool>();
      tr.failed = t.at("failed").get<bool>();
      tr.projection_counterexamples = t.at("projection_counterexamples").get<std::int64_t>();
      tr.max_w_norm = t.at("max_w_norm").get<double>();
      tr.w_bound_exceeded = t.at("w_bound_exceeded").get<bool>();
      tr.final_spectral_pass = t.at("final_spectral_pass").get<bool>();
      tr.error = t.at("error").get<std::string>();
      for (const Json& st : t.at("steps")) tr.steps.push_back(record_from(st));
      r.trial_results.push_back(std::move(tr));
    }
    for (const Json& a : doc.at("per_step")) {
      StepAggregate ag;
      ag.step = a.at("step").get<std::uint32_t>();
      ag.trials = a.at("trials").get<std::int64_t>();
      ag.mean_proj_error = a.at("mean_proj_error").get<double>();
      ag.max_proj_error = a.at("max_proj_error").get<double>();
      ag.mean_w_norm = a.at("mean_w_norm").get<double>();
      ag.max_w_norm = a.at("max_w_norm").get<double>();
      ag.mean_copy_count = a.at("mean_copy_count").get<double>();
      ag.max_copy_count = a.at("max_copy_count").get<std::size_t>();
      r.per_step.push_back(ag);
    }
    if (doc.contains("wall_clock_seconds")) {
      r.wall_clock_seconds = doc.at("wall_clock_seconds").get<double>();
    }
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("report JSON: ") + e.what());
  }
}

namespace {

constexpr const char* kCsvHeader =
    "trial,seed,step,copy_count,proj_error_norm,w_norm,budget_n,a_event,b_event,worst_ratio,"
    "spectral_pass";

}  // namespace

void emit_report_csv(std::ostream& out, const ExperimentReport& r) {
  if (r.config.trials < 1 || r.trial_results.empty()) {
    throw InputError("emit_report: experiment has no trials");
  }
  out << kCsvHeader << '\n';
  std::ostringstream row;
  row.precision(17);
  for (const TrialResult& t : r.trial_results) {
    for (const DiagnosticsRecord& d : t.steps) {
      row.str("");
      row << t.index << ',' << t.seed << ',' << d.step << ',' << d.copy_count << ','
          << d.proj_error_norm << ',' << d.w_norm << ',' << d.budget_n << ',' << d.a_event << ','
          << d.b_event << ',' << d.worst_ratio << ',' << d.spectral_pass << '\n';
      out << row.str();
    }
  }
}

std::vector<TrialResult> read_report_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) throw InputError("report CSV: unexpected header");
  std::map<std::int64_t, TrialResult> by_trial;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ls(line);
    std::int64_t trial = 0;
    std::uint64_t seed = 0;
    DiagnosticsRecord d;
    int a = 0;
    int b = 0;
    int pass = 0;
    if (!(ls >> trial >> seed >> d.step >> d.copy_count >> d.proj_error_norm >> d.w_norm >>
          d.budget_n >> a >> b >> d.worst_ratio >> pass)) {
      throw InputError("report CSV: malformed row");
    }
    d.a_event = a != 0;
    d.b_event = b != 0;
    d.spectral_pass = pass != 0;
    TrialResult& t = by_trial[trial];
    t.index = trial;
    t.seed = seed;
    t.steps.push_back(d);
  }
  std::vector<TrialResult> out;
  for (auto& [k, t] : by_trial) out.push_back(std::move(t));
  return out;
}

}  // namespace respark
