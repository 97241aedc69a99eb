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

// respark: command-line front end (gen, resistances, sparsify, verify,
// experiment).

#include <cstdint>
#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "respark/experiment.hpp"
#include "respark/generators.hpp"
#include "respark/graph.hpp"
#include "respark/linalg.hpp"
#include "respark/resistance.hpp"
#include "respark/sparsifier.hpp"
#include "respark/stream.hpp"
#include "respark/verify.hpp"

namespace {

using namespace respark;

constexpr int kExitFail = 1;
constexpr int kExitError = 2;

struct GenOptions {
  std::string model = "erdos-renyi";
  int n = 10;
  double p = 0.5;
  double a_min = 1.0;
  double a_max = 1.0;
  std::uint64_t seed = 0;
  std::string output;
};

struct StreamOptions {
  double eps = 0.5;
  double delta = 0.1;
  double alpha = 1.0;
  std::optional<std::int64_t> block_size;
  std::optional<std::int64_t> budget_override;
  std::uint64_t seed = 0;
  std::string mode = "sparsifier";
  std::string backend = "dense";
  bool no_drop = false;

  StreamParams params() const {
    StreamParams p;
    p.eps = eps;
    p.delta = delta;
    p.alpha = alpha;
    p.budget_override = budget_override;
    p.seed = seed;
    p.resistance_mode = parse_accuracy_mode(mode);
    p.backend = parse_solver_backend(backend);
    p.no_drop = no_drop;
    return p;
  }
};

void add_stream_flags(CLI::App* cmd, StreamOptions& o) {
  cmd->add_option("--epsilon", o.eps, "Target accuracy eps in (0,1)")->capture_default_str();
  cmd->add_option("--delta", o.delta, "Failure probability delta in (0,1)")->capture_default_str();
  cmd->add_option("--alpha", o.alpha, "Resistance accuracy alpha >= 1")->capture_default_str();
  cmd->add_option("--block-size", o.block_size, "Edges per block (default: N)");
  cmd->add_option("--budget-override", o.budget_override, "Use this N instead of the formula");
  cmd->add_option("--resistance-mode", o.mode, "exact | sparsifier | noisy")->capture_default_str();
  cmd->add_option("--backend", o.backend, "dense | cg")->capture_default_str();
  cmd->add_flag("--no-drop", o.no_drop, "Pin every p~ at 1 (keeps all copies)");
}

std::ostream& open_output(const std::string& path, std::ofstream& file) {
  if (path.empty() || path == "-") return std::cout;
  file.open(path);
  if (!file) throw InputError("cannot open '" + path + "' for writing");
  return file;
}

void print_warnings(const StreamConfig& cfg) {
  for (const std::string& w : cfg.warnings) std::cerr << "warning: " << w << '\n';
}

int run_gen(const GenOptions& o) {
  GeneratorSpec spec{parse_graph_model(o.model), o.n, o.p, o.a_min, o.a_max, o.seed};
  const GeneratedGraph gen = generate_with_info(spec);
  std::ofstream file;
  std::ostream& out = open_output(o.output, file);
  out << "# respark gen model=" << o.model << " n=" << o.n << " p=" << o.p << " seed=" << o.seed;
  if (gen.bridges_added > 0) out << " bridges_added=" << gen.bridges_added;
  out << '\n';
  write_edge_list(out, gen.graph);
  return 0;
}

int run_resistances(const std::string& input, const std::string& backend) {
  const WeightedGraph g = read_edge_list_file(input);
  const auto est = exact_resistances(g, queries_for(g), parse_solver_backend(backend));
  std::ostringstream out;
  out.precision(17);
  double sum = 0.0;
  for (const ResistanceEstimate& r : est) {
    const Edge& e = g.edge(r.edge);
    out << e.u << ' ' << e.v << ' ' << e.weight << ' ' << r.r_tilde << '\n';
    sum += e.weight * r.r_tilde;
  }
  out << "# sum_check " << sum << ' ' << g.num_vertices() - 1 << '\n';
  std::cout << out.str();
  return 0;
}

int run_sparsify(const std::string& input, const StreamOptions& o, const std::string& output,
                 const std::string& diagnostics, bool single_edge) {
  const WeightedGraph g = read_edge_list_file(input);
  StreamParams params = o.params();
  params.diagnostics = !diagnostics.empty();
  const StreamConfig cfg = StreamConfig::for_graph(g, params);
  print_warnings(cfg);
  StreamResult r;
  if (single_edge) {
    std::optional<std::vector<std::uint32_t>> schedule;
    if (o.block_size) schedule = block_schedule(g.num_edges(), *o.block_size);
    r = single_edge_stream(g, cfg, std::move(schedule));
  } else {
    r = stream_sparsify(g, cfg, o.block_size);
  }
  std::ofstream file;
  write_sparsifier(open_output(output, file), r.sparsifier);
  if (!diagnostics.empty()) {
    std::ofstream csv(diagnostics);
    if (!csv) throw InputError("cannot open '" + diagnostics + "' for writing");
    write_diagnostics_csv(csv, r.diagnostics);
  }
  std::cerr << "N=" << cfg.budget_n << " steps=" << r.sparsifier.step()
            << " copies=" << r.sparsifier.copy_count()
            << " edges=" << r.sparsifier.entries().size() << '\n';
  return 0;
}

int run_verify(const std::string& graph, const std::string& sparsifier, double eps) {
  const WeightedGraph g = read_edge_list_file(graph);
  std::ifstream in(sparsifier);
  if (!in) throw InputError("cannot open '" + sparsifier + "'");
  Sparsifier h = read_sparsifier(in);
  if (h.n() < g.num_vertices()) {
    h = Sparsifier::from_entries(g.num_vertices(), h.budget_n(), h.alpha(), h.seed(), h.step(),
                                 std::vector<EdgeCopies>(h.entries().begin(), h.entries().end()));
  }
  const SpectralCheck sc = spectral_check(h, g, eps);
  const ProjectionContext ctx(g);
  const double proj = projection_error(h, ctx);
  std::cout.precision(17);
  std::cout << "worst_ratio " << sc.worst_ratio << '\n'
            << "projection_error " << proj << '\n'
            << "eigenvalue_range " << sc.min_eigenvalue << ' ' << sc.max_eigenvalue << '\n'
            << (sc.passed ? "PASS" : "FAIL") << '\n';
  return sc.passed ? 0 : kExitFail;
}

int run_experiment_cmd(const GenOptions& gen, const StreamOptions& o, std::int64_t trials,
                       const std::string& report, const std::string& format, unsigned threads,
                       bool timing) {
  if (format != "json" && format != "csv") throw InputError("--format must be csv or json");
  ExperimentConfig cfg;
  cfg.graph = GeneratorSpec{parse_graph_model(gen.model), gen.n, gen.p, gen.a_min, gen.a_max,
                            gen.seed};
  cfg.params = o.params();
  cfg.trials = trials;
  cfg.block_size = o.block_size;
  cfg.master_seed = o.seed;
  cfg.record_timing = timing;
  const ExperimentReport rep = run_experiment(cfg, threads);
  for (const std::string& w : rep.warnings) std::cerr << "warning: " << w << '\n';

  std::ofstream file;
  std::ostream& out = open_output(report, file);
  if (format == "json") {
    out << emit_report_json(rep);
  } else {
    emit_report_csv(out, rep);
  }
  const bool ok = acceptance_passed(rep);
  std::ostream& summary = report.empty() || report == "-" ? std::cerr : std::cout;
  summary << "regime=" << rep.regime << " N=" << rep.budget_n << " trials=" << trials
          << " failures=" << rep.union_failures << " (a=" << rep.a_failures
          << " b=" << rep.b_failures << " errors=" << rep.error_trials << ")"
          << " failure_rate=" << rep.failure_rate << " ci95=[" << rep.failure_ci.lower << ", "
          << rep.failure_ci.upper << "] projection_counterexamples=" << rep.projection_counterexamples
          << " w_bound_violations=" << rep.w_bound_violations << ' '
          << (ok ? "PASS" : "FAIL") << '\n';
  return ok ? 0 : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"respark: semi-streaming spectral sparsification toolkit"};
  app.require_subcommand(1);

  GenOptions gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a connected test graph");
  gen_cmd->add_option("--model", gen.model, "path | cycle | complete | erdos-renyi | barbell")
      ->capture_default_str();
  gen_cmd->add_option("--n", gen.n, "Vertex count")->capture_default_str();
  gen_cmd->add_option("--p", gen.p, "Erdos-Renyi edge probability")->capture_default_str();
  gen_cmd->add_option("--a-min", gen.a_min, "Smallest weight")->capture_default_str();
  gen_cmd->add_option("--a-max", gen.a_max, "Largest weight")->capture_default_str();
  gen_cmd->add_option("--seed", gen.seed, "Generator seed")->capture_default_str();
  gen_cmd->add_option("--output", gen.output, "Edge-list path (default stdout)");

  std::string res_input;
  std::string res_backend = "dense";
  auto* res_cmd = app.add_subcommand("resistances", "Exact effective resistance of every edge");
  res_cmd->add_option("--input", res_input, "Edge-list file")->required();
  res_cmd->add_option("--backend", res_backend, "dense | cg")->capture_default_str();

  StreamOptions sp;
  std::string sp_input;
  std::string sp_output;
  std::string sp_diag;
  bool sp_single = false;
  auto* sp_cmd = app.add_subcommand("sparsify", "Stream an edge list through resparsification");
  sp_cmd->add_option("--input", sp_input, "Edge-list file")->required();
  add_stream_flags(sp_cmd, sp);
  sp_cmd->add_option("--seed", sp.seed, "Random tape seed")->capture_default_str();
  sp_cmd->add_option("--output", sp_output, "Sparsifier file (default stdout)");
  sp_cmd->add_option("--diagnostics", sp_diag, "Per-step diagnostics CSV");
  sp_cmd->add_flag("--single-edge", sp_single, "Use the indicator-level single-edge driver");

  std::string vf_graph;
  std::string vf_sparsifier;
  double vf_eps = 0.5;
  auto* vf_cmd = app.add_subcommand("verify", "Check a sparsifier against its graph");
  vf_cmd->add_option("--graph", vf_graph, "Edge-list file")->required();
  vf_cmd->add_option("--sparsifier", vf_sparsifier, "Sparsifier file")->required();
  vf_cmd->add_option("--epsilon", vf_eps, "Accuracy to check")->capture_default_str();

  GenOptions ex_gen;
  StreamOptions ex;
  std::int64_t ex_trials = 10;
  std::string ex_report;
  std::string ex_format = "json";
  unsigned ex_threads = 0;
  bool ex_timing = false;
  auto* ex_cmd = app.add_subcommand("experiment", "Seeded Monte Carlo failure-rate experiment");
  ex_cmd->add_option("--model", ex_gen.model, "Graph model")->capture_default_str();
  ex_cmd->add_option("--n", ex_gen.n, "Vertex count")->capture_default_str();
  ex_cmd->add_option("--p", ex_gen.p, "Erdos-Renyi edge probability")->capture_default_str();
  ex_cmd->add_option("--a-min", ex_gen.a_min, "Smallest weight")->capture_default_str();
  ex_cmd->add_option("--a-max", ex_gen.a_max, "Largest weight")->capture_default_str();
  ex_cmd->add_option("--graph-seed", ex_gen.seed, "Generator seed")->capture_default_str();
  add_stream_flags(ex_cmd, ex);
  ex_cmd->add_option("--seed", ex.seed, "Master seed")->capture_default_str();
  ex_cmd->add_option("--trials", ex_trials, "Number of trials")->capture_default_str();
  ex_cmd->add_option("--report", ex_report, "Report path (default stdout)");
  ex_cmd->add_option("--format", ex_format, "json | csv")->capture_default_str();
  ex_cmd->add_option("--threads", ex_threads, "Worker threads (0 = all cores)");
  ex_cmd->add_flag("--timing", ex_timing, "Include wall-clock seconds in the report");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen_cmd) return run_gen(gen);
    if (*res_cmd) return run_resistances(res_input, res_backend);
    if (*sp_cmd) return run_sparsify(sp_input, sp, sp_output, sp_diag, sp_single);
    if (*vf_cmd) return run_verify(vf_graph, vf_sparsifier, vf_eps);
    if (*ex_cmd) {
      return run_experiment_cmd(ex_gen, ex, ex_trials, ex_report, ex_format, ex_threads, ex_timing);
    }
  } catch (const std::exception& e) {
    std::cerr << "respark: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}
