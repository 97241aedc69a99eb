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

#include "respark/stream.hpp"

#include <sstream>

#include <gtest/gtest.h>

#include "test_util.hpp"

namespace respark {
namespace {

StreamConfig make_config(const WeightedGraph& g, std::int64_t n_copies, std::uint64_t seed,
                         AccuracyMode mode, bool no_drop = false, bool diagnostics = false) {
  StreamParams p;
  p.budget_override = n_copies;
  p.seed = seed;
  p.resistance_mode = mode;
  p.no_drop = no_drop;
  p.diagnostics = diagnostics;
  return StreamConfig::for_graph(g, p);
}

std::string dump(const Sparsifier& h) {
  std::ostringstream s;
  write_sparsifier(s, h);
  return s.str();
}

TEST(StreamSparsify, NoDropReconstructsGraph) {
  const WeightedGraph g = testing::er(15, 0.4, 3, 0.1, 1.0);
  const StreamConfig cfg = make_config(g, 12, 4, AccuracyMode::kFromSparsifier, true, true);
  const StreamResult r = stream_sparsify(g, cfg, 5);
  EXPECT_EQ(r.sparsifier.copy_count(), 12 * g.num_edges());
  for (const EdgeCopies& c : r.sparsifier.entries()) {
    EXPECT_EQ(c.p_tilde, 1.0);
    EXPECT_EQ(c.endpoints, g.edge(c.edge));
    EXPECT_NEAR(copy_weight(c.endpoints.weight, 12, 1.0) * 12, c.endpoints.weight, 1e-15);
  }
  EXPECT_LE(testing::rel_frobenius(r.sparsifier.laplacian().matrix, build_laplacian(g).matrix),
            1e-12);
  for (const DiagnosticsRecord& d : r.diagnostics) {
    EXPECT_LE(d.proj_error_norm, 1e-10);
    EXPECT_FALSE(d.a_event);
  }
}

TEST(StreamSparsify, NoDropCountEventArithmetic) {
  const WeightedGraph g = testing::unit_path(7);
  const StreamConfig cfg = make_config(g, 5, 0, AccuracyMode::kExact, true, true);
  const StreamResult r = stream_sparsify(g, cfg, 1);
  ASSERT_EQ(r.diagnostics.size(), 6u);
  for (const DiagnosticsRecord& d : r.diagnostics) {
    EXPECT_EQ(d.copy_count, d.step * 5u);
    EXPECT_EQ(d.b_event, d.step >= 3);
  }
}

TEST(StreamSparsify, DeterministicPerSeed) {
  const WeightedGraph g = testing::er(20, 0.3, 1);
  const StreamConfig cfg = make_config(g, 60, 99, AccuracyMode::kFromSparsifier);
  const StreamResult a = stream_sparsify(g, cfg, 10);
  const StreamResult b = stream_sparsify(g, cfg, 10);
  EXPECT_EQ(a.sparsifier, b.sparsifier);
  EXPECT_EQ(dump(a.sparsifier), dump(b.sparsifier));
  const StreamResult c = stream_sparsify(g, make_config(g, 60, 100, AccuracyMode::kFromSparsifier), 10);
  EXPECT_NE(a.sparsifier, c.sparsifier);
}

TEST(StreamSparsify, DefaultBlockIsBudget) {
  const WeightedGraph g = testing::er(12, 0.5, 2);
  const StreamResult r = stream_sparsify(g, make_config(g, 10, 1, AccuracyMode::kExact));
  const std::size_t expected_steps = (g.num_edges() + 9) / 10;
  EXPECT_EQ(r.trace.steps.size(), expected_steps);
  EXPECT_EQ(r.sparsifier.step(), expected_steps);
}

TEST(SingleEdgeStream, MatchesBlockSizeOne) {
  for (const AccuracyMode mode :
       {AccuracyMode::kExact, AccuracyMode::kFromSparsifier, AccuracyMode::kInjectedNoise}) {
    const WeightedGraph g = testing::er(10, 0.5, 6);
    StreamParams p;
    p.budget_override = 40;
    p.seed = 21;
    p.resistance_mode = mode;
    p.alpha = mode == AccuracyMode::kInjectedNoise ? 1.5 : 1.0;
    p.diagnostics = true;
    const StreamConfig cfg = StreamConfig::for_graph(g, p);
    const StreamResult blocked = stream_sparsify(g, cfg, 1);
    const StreamResult single = single_edge_stream(g, cfg);
    EXPECT_EQ(blocked.sparsifier, single.sparsifier) << to_string(mode);
    EXPECT_EQ(blocked.diagnostics, single.diagnostics) << to_string(mode);
    ASSERT_EQ(blocked.trace.steps.size(), single.trace.steps.size());
    for (std::size_t s = 0; s < blocked.trace.steps.size(); ++s) {
      ASSERT_EQ(blocked.trace.steps[s].edges.size(), single.trace.steps[s].edges.size());
      for (std::size_t k = 0; k < blocked.trace.steps[s].edges.size(); ++k) {
        const EdgeStepTrace& x = blocked.trace.steps[s].edges[k];
        const EdgeStepTrace& y = single.trace.steps[s].edges[k];
        EXPECT_EQ(x.edge, y.edge);
        EXPECT_EQ(x.p_new, y.p_new);
        EXPECT_EQ(x.alive_after, y.alive_after);
      }
    }
  }
}

TEST(SingleEdgeStream, BlockScheduleMatchesBlockStream) {
  const WeightedGraph g = testing::er(14, 0.4, 8);
  const auto m = static_cast<std::int64_t>(g.num_edges());
  for (const std::int64_t b : {std::int64_t{1}, std::int64_t{3}, std::int64_t{7}, m}) {
    const StreamConfig cfg = make_config(g, 25, 5, AccuracyMode::kFromSparsifier);
    const StreamResult blocked = stream_sparsify(g, cfg, b);
    const StreamResult single = single_edge_stream(g, cfg, block_schedule(g.num_edges(), b));
    EXPECT_EQ(blocked.sparsifier, single.sparsifier) << "block size " << b;
  }
}

TEST(SingleEdgeStream, RejectsBadSchedules) {
  const WeightedGraph g = testing::unit_path(4);
  const StreamConfig cfg = make_config(g, 4, 0, AccuracyMode::kExact);
  EXPECT_THROW(single_edge_stream(g, cfg, std::vector<std::uint32_t>{2, 2, 3}), InputError);
  EXPECT_THROW(single_edge_stream(g, cfg, std::vector<std::uint32_t>{1, 3, 3}), InputError);
  EXPECT_THROW(single_edge_stream(g, cfg, std::vector<std::uint32_t>{1, 2}), InputError);
}

TEST(SingleEdgeStream, UnseenEdgesHoldUnitStateAndDoNotContribute) {
  const WeightedGraph g = testing::er(9, 0.5, 12);
  const StreamConfig cfg = make_config(g, 30, 2, AccuracyMode::kExact);
  int checked = 0;
  const IndicatorObserver observe = [&](const IndicatorState& st) {
    for (std::size_t e = st.arrived; e < g.num_edges(); ++e) {
      EXPECT_EQ(st.p_tilde[e], 1.0);
      for (std::uint32_t j = 1; j <= 30; ++j) EXPECT_EQ(st.z(static_cast<EdgeId>(e), j), 1);
    }
    for (std::size_t e = 0; e < st.arrived; ++e) EXPECT_LE(st.p_tilde[e], 1.0);
    const WeightedGraph gs = g.prefix(st.arrived);
    const ProjectionContext ctx = ProjectionContext::component_wise(gs);
    // Sum over all m edges (unseen ones included) equals the G_s-only error.
    std::vector<EdgeCopies> entries;
    for (std::size_t e = 0; e < st.arrived; ++e) {
      EdgeCopies c{static_cast<EdgeId>(e), g.edges()[e], st.p_tilde[e], {}};
      for (std::uint32_t j = 1; j <= 30; ++j) {
        if (st.z(static_cast<EdgeId>(e), j)) c.alive.push_back(j);
      }
      entries.push_back(std::move(c));
    }
    const Sparsifier h = Sparsifier::from_entries(9, 30, 1.0, 2, st.step, std::move(entries));
    EXPECT_NEAR(indicator_projection_error(st, g, ctx), projection_error_on_range(h, ctx), 1e-12);
    ++checked;
  };
  single_edge_stream(g, cfg, std::nullopt, observe);
  EXPECT_EQ(checked, static_cast<int>(g.num_edges()));
}

TEST(SingleEdgeStream, TreeStreamKeepsSampledCopies) {
  // On a path every G_s is a tree, so r = 1/a at every step and all ratios are
  // 1 up to rounding in the pseudoinverse.
  const WeightedGraph g = testing::unit_path(5);
  const StreamResult r = single_edge_stream(g, make_config(g, 2000, 3, AccuracyMode::kExact));
  for (const StepTrace& st : r.trace.steps) {
    for (const EdgeStepTrace& et : st.edges) {
      if (et.edge + 1 == static_cast<EdgeId>(st.step)) continue;  // arriving now
      EXPECT_NEAR(et.p_new, et.p_prev, 1e-13);
      EXPECT_EQ(et.alive_after, et.alive_before);
    }
  }
  const StreamResult all =
      single_edge_stream(g, make_config(g, 2000, 3, AccuracyMode::kExact, true));
  EXPECT_EQ(all.sparsifier.copy_count(), 4u * 2000u);
}

TEST(StreamDiagnostics, StepsAndEventsAreConsistent) {
  const WeightedGraph g = testing::er(12, 0.5, 3);
  const StreamConfig cfg = make_config(g, 50, 7, AccuracyMode::kExact, false, true);
  const StreamResult r = stream_sparsify(g, cfg, 6);
  ASSERT_EQ(r.diagnostics.size(), r.trace.steps.size());
  for (std::size_t k = 0; k < r.diagnostics.size(); ++k) {
    const DiagnosticsRecord& d = r.diagnostics[k];
    EXPECT_EQ(d.step, k + 1);
    EXPECT_EQ(d.a_event, d.proj_error_norm >= cfg.eps);
    EXPECT_EQ(d.b_event, d.copy_count >= static_cast<std::size_t>(3 * cfg.budget_n));
    EXPECT_GE(d.proj_error_norm, 0.0);
    EXPECT_GE(d.w_norm, 0.0);
    if (d.proj_error_norm <= cfg.eps) EXPECT_TRUE(d.spectral_pass);
  }
}

}  // namespace
}  // namespace respark
