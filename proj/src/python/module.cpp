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

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "respark/experiment.hpp"
#include "respark/generators.hpp"
#include "respark/graph.hpp"
#include "respark/linalg.hpp"
#include "respark/random_tape.hpp"
#include "respark/resistance.hpp"
#include "respark/sparsifier.hpp"
#include "respark/stream.hpp"
#include "respark/verify.hpp"

namespace py = pybind11;
using namespace respark;

namespace {

StreamParams make_params(double eps, double delta, double alpha,
                         std::optional<std::int64_t> budget_override, std::uint64_t seed,
                         const std::string& mode, bool no_drop) {
  StreamParams p;
  p.eps = eps;
  p.delta = delta;
  p.alpha = alpha;
  p.budget_override = budget_override;
  p.seed = seed;
  p.resistance_mode = parse_accuracy_mode(mode);
  p.no_drop = no_drop;
  return p;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Semi-streaming spectral sparsification (C++ core)";

  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<ConnectivityError>(m, "ConnectivityError", PyExc_RuntimeError);

  py::class_<Edge>(m, "Edge")
      .def(py::init<Vertex, Vertex, double>(), py::arg("u"), py::arg("v"), py::arg("weight") = 1.0)
      .def_readwrite("u", &Edge::u)
      .def_readwrite("v", &Edge::v)
      .def_readwrite("weight", &Edge::weight)
      .def("__repr__", [](const Edge& e) {
        std::ostringstream s;
        s << "Edge(" << e.u << ", " << e.v << ", " << e.weight << ")";
        return s.str();
      });

  py::class_<WeightedGraph>(m, "WeightedGraph")
      .def(py::init([](int n, const std::vector<std::tuple<Vertex, Vertex, double>>& edges) {
             std::vector<Edge> list;
             list.reserve(edges.size());
             for (const auto& [u, v, w] : edges) list.push_back({u, v, w});
             return WeightedGraph(n, std::move(list));
           }),
           py::arg("n"), py::arg("edges"))
      .def_property_readonly("n", &WeightedGraph::num_vertices)
      .def_property_readonly("m", &WeightedGraph::num_edges)
      .def("edges",
           [](const WeightedGraph& g) {
             std::vector<std::tuple<Vertex, Vertex, double>> out;
             for (const Edge& e : g.edges()) out.emplace_back(e.u, e.v, e.weight);
             return out;
           })
      .def("laplacian", [](const WeightedGraph& g) { return build_laplacian(g).matrix; })
      .def("is_connected", [](const WeightedGraph& g) { return is_connected(g); })
      .def("lambda_max_bound", [](const WeightedGraph& g) { return lambda_max_bound(g); });

  m.def(
      "generate",
      [](const std::string& model, int n, double p, double a_min, double a_max,
         std::uint64_t seed) {
        return generate(GeneratorSpec{parse_graph_model(model), n, p, a_min, a_max, seed});
      },
      py::arg("model"), py::arg("n"), py::arg("p") = 0.5, py::arg("a_min") = 1.0,
      py::arg("a_max") = 1.0, py::arg("seed") = 0);

  m.def(
      "resistances",
      [](const WeightedGraph& g) {
        std::vector<double> out;
        for (const ResistanceEstimate& r : exact_resistances(g, queries_for(g))) {
          out.push_back(r.r_tilde);
        }
        return out;
      },
      py::arg("graph"), "Exact effective resistance of each edge, in stream order.");

  m.def("compute_budget", &compute_budget, py::arg("eps"), py::arg("delta"), py::arg("alpha"),
        py::arg("kappa"), py::arg("n"), py::arg("m"));

  m.def(
      "projection_matrix",
      [](const WeightedGraph& g) { return projection_matrix(ProjectionContext(g)); },
      py::arg("graph"));

  py::class_<Sparsifier>(m, "Sparsifier")
      .def_property_readonly("n", &Sparsifier::n)
      .def_property_readonly("budget_n", &Sparsifier::budget_n)
      .def_property_readonly("step", &Sparsifier::step)
      .def_property_readonly("copy_count", &Sparsifier::copy_count)
      .def("laplacian", [](const Sparsifier& h) { return h.laplacian().matrix; })
      .def("aggregated_edges",
           [](const Sparsifier& h) {
             std::vector<std::tuple<Vertex, Vertex, double>> out;
             for (const Edge& e : h.aggregated_edges()) out.emplace_back(e.u, e.v, e.weight);
             return out;
           })
      .def("to_text", [](const Sparsifier& h) {
        std::ostringstream s;
        write_sparsifier(s, h);
        return s.str();
      });

  py::class_<DiagnosticsRecord>(m, "DiagnosticsRecord")
      .def_readonly("step", &DiagnosticsRecord::step)
      .def_readonly("copy_count", &DiagnosticsRecord::copy_count)
      .def_readonly("proj_error_norm", &DiagnosticsRecord::proj_error_norm)
      .def_readonly("w_norm", &DiagnosticsRecord::w_norm)
      .def_readonly("budget_n", &DiagnosticsRecord::budget_n)
      .def_readonly("a_event", &DiagnosticsRecord::a_event)
      .def_readonly("b_event", &DiagnosticsRecord::b_event)
      .def_readonly("worst_ratio", &DiagnosticsRecord::worst_ratio)
      .def_readonly("spectral_pass", &DiagnosticsRecord::spectral_pass);

  m.def(
      "sparsify",
      [](const WeightedGraph& g, double eps, double delta, double alpha,
         std::optional<std::int64_t> budget_override, std::optional<std::int64_t> block_size,
         std::uint64_t seed, const std::string& mode, bool no_drop, bool single_edge) {
        const StreamConfig cfg = StreamConfig::for_graph(
            g, make_params(eps, delta, alpha, budget_override, seed, mode, no_drop));
        StreamResult r;
        {
          py::gil_scoped_release release;
          if (single_edge) {
            std::optional<std::vector<std::uint32_t>> schedule;
            if (block_size) schedule = block_schedule(g.num_edges(), *block_size);
            r = single_edge_stream(g, cfg, std::move(schedule));
          } else {
            r = stream_sparsify(g, cfg, block_size);
          }
        }
        return py::make_tuple(r.sparsifier, r.diagnostics);
      },
      py::arg("graph"), py::arg("eps") = 0.5, py::arg("delta") = 0.1, py::arg("alpha") = 1.0,
      py::arg("budget_override") = py::none(), py::arg("block_size") = py::none(),
      py::arg("seed") = 0, py::arg("resistance_mode") = "sparsifier", py::arg("no_drop") = false,
      py::arg("single_edge") = false,
      "Run the stream driver; returns (Sparsifier, [DiagnosticsRecord]).");

  m.def(
      "spectral_check",
      [](const Sparsifier& h, const WeightedGraph& g, double eps) {
        const SpectralCheck c = spectral_check(h, g, eps);
        return py::make_tuple(c.passed, c.worst_ratio);
      },
      py::arg("sparsifier"), py::arg("graph"), py::arg("eps"));
  m.def(
      "spectral_check_graph",
      [](const WeightedGraph& h, const WeightedGraph& g, double eps) {
        const SpectralCheck c = spectral_check(h, g, eps);
        return py::make_tuple(c.passed, c.worst_ratio);
      },
      py::arg("h"), py::arg("graph"), py::arg("eps"));
  m.def(
      "projection_error",
      [](const Sparsifier& h, const WeightedGraph& g) {
        return projection_error(h, ProjectionContext(g));
      },
      py::arg("sparsifier"), py::arg("graph"));

  m.def(
      "sample_dominating_w0",
      [](double p, double alpha, std::size_t count, std::uint64_t seed) {
        return sample_dominating_w0_batch(p, alpha, RandomTape(seed), count);
      },
      py::arg("p"), py::arg("alpha"), py::arg("count"), py::arg("seed") = 0);
  m.def("dominating_w0_mean", &dominating_w0_mean, py::arg("p"), py::arg("alpha"));

  m.def(
      "run_experiment_json",
      [](const std::string& model, int n, double p, double eps, double delta, double alpha,
         std::optional<std::int64_t> budget_override, std::optional<std::int64_t> block_size,
         std::int64_t trials, std::uint64_t seed, std::uint64_t graph_seed,
         const std::string& mode) {
        ExperimentConfig cfg;
        cfg.graph = GeneratorSpec{parse_graph_model(model), n, p, 1.0, 1.0, graph_seed};
        cfg.params = make_params(eps, delta, alpha, budget_override, 0, mode, false);
        cfg.trials = trials;
        cfg.block_size = block_size;
        cfg.master_seed = seed;
        py::gil_scoped_release release;
        return emit_report_json(run_experiment(cfg));
      },
      py::arg("model") = "erdos-renyi", py::arg("n") = 20, py::arg("p") = 0.4,
      py::arg("eps") = 0.5, py::arg("delta") = 0.1, py::arg("alpha") = 1.0,
      py::arg("budget_override") = py::none(), py::arg("block_size") = py::none(),
      py::arg("trials") = 4, py::arg("seed") = 0, py::arg("graph_seed") = 0,
      py::arg("resistance_mode") = "sparsifier",
      "Run a Monte Carlo experiment and return the JSON report text.");
}
