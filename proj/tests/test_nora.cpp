#include <gtest/gtest.h>

#include <random>
#include <set>

#include "clientnet/error.hpp"
#include "clientnet/nora.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace clientnet;

namespace {

std::set<oracle::Arc> arcs_of(std::span<const DirectedEdge> edges) {
  std::set<oracle::Arc> out;
  for (const DirectedEdge& e : edges) out.insert({e.source, e.target, e.edge, 1.0});
  return out;
}

std::set<std::pair<std::string, std::string>> named(const EcosystemGraph& g, std::span<const DirectedEdge> edges) {
  std::set<std::pair<std::string, std::string>> out;
  for (const DirectedEdge& e : edges) out.emplace(g.id(e.source), g.id(e.target));
  return out;
}

std::vector<std::string> names(const EcosystemGraph& g, const std::vector<NodeIndex>& order) {
  std::vector<std::string> out;
  for (NodeIndex n : order) out.push_back(g.id(n));
  return out;
}

std::vector<std::pair<NodeIndex, NodeIndex>> pairs(std::span<const DirectedEdge> edges) {
  std::vector<std::pair<NodeIndex, NodeIndex>> out;
  for (const DirectedEdge& e : edges) out.emplace_back(e.source, e.target);
  return out;
}

bool topological(const AnalysisResult& a) {
  std::vector<std::size_t> pos(a.node_count, SIZE_MAX);
  for (std::size_t i = 0; i < a.order.size(); ++i) pos[a.order[i]] = i;
  for (const DirectedEdge& e : a.prime_edges) {
    if (pos[e.source] == SIZE_MAX || pos[e.target] == SIZE_MAX || pos[e.source] >= pos[e.target]) return false;
  }
  return true;
}

// Directed DAG analysis built by hand, bypassing graph traversal.
AnalysisResult dag(std::size_t n, std::vector<std::pair<NodeIndex, NodeIndex>> arcs) {
  AnalysisResult a;
  a.node_count = n;
  EdgeIndex e = 0;
  for (auto [u, v] : arcs) a.prime_edges.push_back({u, v, e++, 1.0});
  DirectedMultigraph dg{n, a.prime_edges};
  a.order = topological_order(dg, 0);
  return a;
}

const EcosystemGraph kSquare =
    fixture::companies({"s", "a", "b", "t"}, {{"s", "a"}, {"s", "b"}, {"a", "t"}, {"b", "t"}}, "s");
const EcosystemGraph kTriangle = fixture::companies({"s", "a", "b"}, {{"s", "a"}, {"s", "b"}, {"a", "b"}}, "s");

}  // namespace

TEST(ExtendedDijkstra, SingleNode) {
  const EcosystemGraph g = fixture::companies({"s"}, {}, "s");
  const AnalysisResult a = extended_dijkstra(g, g.root());
  EXPECT_EQ(names(g, a.order), std::vector<std::string>{"s"});
  EXPECT_TRUE(a.prime_edges.empty());
}

TEST(ExtendedDijkstra, Square) {
  const AnalysisResult a = extended_dijkstra(kSquare, kSquare.root());
  EXPECT_EQ(names(kSquare, a.order), (std::vector<std::string>{"s", "a", "b", "t"}));
  EXPECT_EQ(named(kSquare, a.prime_edges),
            (std::set<std::pair<std::string, std::string>>{{"s", "a"}, {"s", "b"}, {"a", "t"}, {"b", "t"}}));
  EXPECT_EQ(arcs_of(a.prime_edges), oracle::all_shortest_path_arcs(kSquare, kSquare.root()));
}

TEST(ExtendedDijkstra, TriangleExcludesChord) {
  const AnalysisResult a = extended_dijkstra(kTriangle, kTriangle.root());
  EXPECT_EQ(named(kTriangle, a.prime_edges),
            (std::set<std::pair<std::string, std::string>>{{"s", "a"}, {"s", "b"}}));
}

TEST(ExtendedDijkstra, StrictlyBetterParentResetsMarks) {
  // t is first reached by the expensive edge s-t (cost 5), then through a.
  const EcosystemGraph g = fixture::companies({"s", "a", "t"}, {{"s", "t", 5.0}, {"s", "a", 1.0}, {"a", "t", 1.0}}, "s");
  const AnalysisResult a = extended_dijkstra(g, g.root());
  EXPECT_EQ(named(g, a.prime_edges), (std::set<std::pair<std::string, std::string>>{{"s", "a"}, {"a", "t"}}));
  EXPECT_DOUBLE_EQ(a.distances[g.index_of("t")], 2.0);
}

TEST(ExtendedDijkstra, ParallelEqualCostEdgesBothMarked) {
  const EcosystemGraph g = fixture::companies({"s", "a"}, {{"s", "a"}, {"s", "a"}, {"s", "a", 2.0}}, "s");
  const AnalysisResult a = extended_dijkstra(g, g.root());
  EXPECT_EQ(a.prime_edges.size(), 2u);
}

TEST(ExtendedDijkstra, UnknownSource) {
  EXPECT_THROW(extended_dijkstra(kSquare, 99), Error);
}

TEST(AnalyzeNetworkD, DisconnectedNodeExcluded) {
  const EcosystemGraph g = fixture::companies({"s", "a", "x"}, {{"s", "a"}}, "s");
  const AnalysisResult a = analyze_network_d(g, g.root());
  const NodeIndex x = g.index_of("x");
  EXPECT_EQ(std::count(a.order.begin(), a.order.end(), x), 0);
  for (const DirectedEdge& e : a.prime_edges) {
    EXPECT_NE(e.source, x);
    EXPECT_NE(e.target, x);
  }
}

TEST(AnalyzeNetworkD, SquareDelegates) {
  const AnalysisResult a = analyze_network_d(kSquare, kSquare.root());
  const AnalysisResult b = extended_dijkstra(kSquare, kSquare.root());
  EXPECT_EQ(a.order, b.order);
  EXPECT_EQ(arcs_of(a.prime_edges), arcs_of(b.prime_edges));
}

TEST(AnalyzeNetworkD, BreadthFirstRejectsMixedCosts) {
  const EcosystemGraph g = fixture::companies({"s", "a"}, {{"s", "a", 1.0}, {"s", "a", 2.0}}, "s");
  EXPECT_THROW(breadth_first_analysis(g, g.root()), Error);
  EXPECT_NO_THROW(analyze_network_d(g, g.root()));
}

TEST(AnalyzeNetworkDProperty, BreadthFirstMatchesDijkstra) {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 200; ++i) {
    oracle::RandomGraphSpec spec;
    spec.density = 0.15 + 0.05 * (i % 8);
    spec.self_loop_probability = 0.05;
    const EcosystemGraph g = oracle::random_graph(rng, spec);
    const AnalysisResult bfs = analyze_network_d(g, g.root(), ShortestPathMethod::BreadthFirst);
    const AnalysisResult dij = analyze_network_d(g, g.root(), ShortestPathMethod::Dijkstra);
    EXPECT_EQ(arcs_of(bfs.prime_edges), arcs_of(dij.prime_edges));
    ASSERT_EQ(bfs.order.size(), dij.order.size());
    std::map<double, std::set<NodeIndex>> tiers_bfs, tiers_dij;
    for (NodeIndex v : bfs.order) tiers_bfs[bfs.distances[v]].insert(v);
    for (NodeIndex v : dij.order) tiers_dij[dij.distances[v]].insert(v);
    EXPECT_EQ(tiers_bfs, tiers_dij);
  }
}

TEST(AnalyzeNetworkDProperty, PrimeEdgesLieOnShortestPaths) {
  std::mt19937_64 rng(22);
  for (int i = 0; i < 100; ++i) {
    oracle::RandomGraphSpec spec;
    spec.integer_costs = true;
    spec.directed = i % 3 == 0;
    const EcosystemGraph g = oracle::random_graph(rng, spec);
    const AnalysisResult a = analyze_network_d(g, g.root());
    for (const DirectedEdge& e : a.prime_edges) {
      EXPECT_DOUBLE_EQ(a.distances[e.target], a.distances[e.source] + g.edge(e.edge).cost);
    }
    for (std::size_t k = 1; k < a.order.size(); ++k) {
      EXPECT_LE(a.distances[a.order[k - 1]], a.distances[a.order[k]]);
    }
    EXPECT_TRUE(is_acyclic(a.node_count, a.prime_edges));
    EXPECT_EQ(arcs_of(a.prime_edges), oracle::all_shortest_path_arcs(g, g.root()));
  }
}

TEST(OrientByBfs, Triangle) {
  const DirectedMultigraph d = orient_by_bfs(kTriangle, kTriangle.root());
  EXPECT_EQ(named(kTriangle, d.arcs),
            (std::set<std::pair<std::string, std::string>>{{"s", "a"}, {"s", "b"}, {"a", "b"}}));
}

TEST(OrientByBfs, SelfLoopDropped) {
  const EcosystemGraph g = fixture::companies({"s"}, {{"s", "s"}}, "s");
  EXPECT_TRUE(orient_by_bfs(g, g.root()).arcs.empty());
}

TEST(OrientByBfs, ParallelEdgesShareDirection) {
  const EcosystemGraph g = fixture::companies({"s", "a", "b"}, {{"s", "a"}, {"b", "a"}, {"a", "b"}}, "s");
  const DirectedMultigraph d = orient_by_bfs(g, g.root());
  ASSERT_EQ(d.arcs.size(), 3u);
  int ab = 0;
  for (const DirectedEdge& e : d.arcs) {
    if (g.id(e.source) == "a" && g.id(e.target) == "b") ++ab;
  }
  EXPECT_EQ(ab, 2);
}

TEST(OrientByBfsProperty, MatchesOracleAndIsAcyclic) {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 200; ++i) {
    oracle::RandomGraphSpec spec;
    spec.self_loop_probability = 0.1;
    spec.parallel_probability = 0.2;
    const EcosystemGraph g = oracle::random_graph(rng, spec);
    const DirectedMultigraph d = orient_by_bfs(g, g.root());
    EXPECT_EQ(arcs_of(d.arcs), oracle::bfs_orientation(g, g.root()));
    EXPECT_TRUE(oracle::acyclic(g.node_count(), pairs(d.arcs)));
  }
}

TEST(AnalyzeNetworkT, Triangle) {
  const AnalysisResult a = analyze_network_t(kTriangle, kTriangle.root());
  EXPECT_EQ(named(kTriangle, a.prime_edges),
            (std::set<std::pair<std::string, std::string>>{{"s", "a"}, {"s", "b"}, {"a", "b"}}));
  EXPECT_EQ(names(kTriangle, a.order), (std::vector<std::string>{"s", "a", "b"}));
  EXPECT_GT(a.prime_edges.size(), analyze_network_d(kTriangle, kTriangle.root()).prime_edges.size());
}

TEST(AnalyzeNetworkT, SingleNode) {
  const EcosystemGraph g = fixture::companies({"s"}, {}, "s");
  const AnalysisResult a = analyze_network_t(g, g.root());
  EXPECT_EQ(a.order, std::vector<NodeIndex>{g.root()});
  EXPECT_TRUE(a.prime_edges.empty());
}

TEST(AnalyzeNetworkTProperty, OrderIsTopological) {
  std::mt19937_64 rng(24);
  for (int i = 0; i < 100; ++i) {
    oracle::RandomGraphSpec spec;
    spec.density = 0.1 + 0.05 * (i % 10);
    spec.self_loop_probability = 0.05;
    const EcosystemGraph g = oracle::random_graph(rng, spec);
    const AnalysisResult a = analyze_network_t(g, g.root());
    EXPECT_TRUE(topological(a));
    EXPECT_TRUE(oracle::acyclic(g.node_count(), pairs(a.prime_edges)));
  }
}

TEST(AnalyzeNetworkTProperty, DirectedInputIsAcyclicAndTopological) {
  std::mt19937_64 rng(25);
  for (int i = 0; i < 100; ++i) {
    oracle::RandomGraphSpec spec;
    spec.directed = true;
    spec.density = 0.2 + 0.03 * (i % 10);
    spec.self_loop_probability = 0.1;
    const EcosystemGraph g = oracle::random_graph(rng, spec);
    const AnalysisResult a = analyze_network_t(g, g.root());
    EXPECT_TRUE(topological(a));
    EXPECT_TRUE(oracle::acyclic(g.node_count(), pairs(a.prime_edges)));
  }
}

TEST(NoraProperty, DPrimeEdgesSubsetOfTOnUniformUndirected) {
  std::mt19937_64 rng(26);
  for (int i = 0; i < 200; ++i) {
    const EcosystemGraph g = oracle::random_graph(rng, {});
    const auto d = arcs_of(analyze_network_d(g, g.root()).prime_edges);
    const auto t = arcs_of(analyze_network_t(g, g.root()).prime_edges);
    EXPECT_TRUE(std::includes(t.begin(), t.end(), d.begin(), d.end()));
  }
}

TEST(PropagateFlow, Chain) {
  const FlowResult f = propagate_flow(dag(3, {{0, 1}, {1, 2}}), 0);
  EXPECT_DOUBLE_EQ(f.scores[0], 1.0);
  EXPECT_DOUBLE_EQ(f.scores[1], 0.95);
  EXPECT_DOUBLE_EQ(f.scores[2], 0.9025);
}

TEST(PropagateFlow, Diamond) {
  const FlowResult f = propagate_flow(dag(4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}}), 0);
  EXPECT_DOUBLE_EQ(f.scores[1], 0.475);
  EXPECT_DOUBLE_EQ(f.scores[2], 0.475);
  EXPECT_DOUBLE_EQ(f.scores[3], 0.9025);
}

TEST(PropagateFlow, ParallelEdgesMatchSingleEdge) {
  EXPECT_DOUBLE_EQ(propagate_flow(dag(2, {{0, 1}, {0, 1}}), 0).scores[1], 0.95);
  EXPECT_DOUBLE_EQ(propagate_flow(dag(2, {{0, 1}}), 0).scores[1], 0.95);
}

TEST(PropagateFlow, GammaOutOfRange) {
  const AnalysisResult a = dag(2, {{0, 1}});
  for (double gamma : {0.0, 1.0, -0.5, 1.5}) {
    FlowOptions o;
    o.gamma = gamma;
    try {
      propagate_flow(a, 0, o);
      FAIL() << gamma;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::GammaOutOfRange);
    }
  }
}

TEST(PropagateFlow, WeightedSplit) {
  AnalysisResult a = dag(3, {{0, 1}, {0, 2}});
  a.prime_edges[0].weight = 3.0;
  FlowOptions o;
  o.split = FlowSplit::EdgeWeight;
  const FlowResult f = propagate_flow(a, 0, o);
  EXPECT_DOUBLE_EQ(f.scores[1], 0.95 * 0.75);
  EXPECT_DOUBLE_EQ(f.scores[2], 0.95 * 0.25);
}

TEST(PropagateFlowProperty, SourceFlowScalesScores) {
  std::mt19937_64 rng(27);
  for (int i = 0; i < 50; ++i) {
    const EcosystemGraph g = oracle::random_graph(rng, {});
    FlowOptions scaled;
    scaled.source_flow = 3.5;
    const FlowResult base = nora_score(g, g.root(), NoraVariant::T);
    const FlowResult big = nora_score(g, g.root(), NoraVariant::T, scaled);
    for (NodeIndex v = 0; v < g.node_count(); ++v) EXPECT_NEAR(big.scores[v], 3.5 * base.scores[v], 1e-12);
  }
}

TEST(PropagateFlowProperty, EmittedFlowIsGammaTimesOwn) {
  std::mt19937_64 rng(28);
  for (int i = 0; i < 100; ++i) {
    const EcosystemGraph g = oracle::random_graph(rng, {});
    for (NoraVariant variant : {NoraVariant::D, NoraVariant::T}) {
      const AnalysisResult a = variant == NoraVariant::D ? analyze_network_d(g, g.root()) : analyze_network_t(g, g.root());
      const FlowResult f = propagate_flow(a, g.root());
      std::vector<std::uint8_t> has_child(g.node_count(), 0);
      for (const DirectedEdge& e : a.prime_edges) has_child[e.source] = 1;
      double received = 0, emitted = 0;
      for (NodeIndex v = 0; v < g.node_count(); ++v) {
        if (v != g.root()) received += f.scores[v];
        if (has_child[v]) emitted += 0.95 * f.scores[v];
      }
      EXPECT_NEAR(received, emitted, 1e-12 * std::max(1.0, emitted));
    }
  }
}

TEST(PropagateFlowProperty, ChainDepthPower) {
  std::vector<fixture::Link> links;
  for (int i = 0; i < 20; ++i) links.push_back({"n" + std::to_string(100 + i), "n" + std::to_string(101 + i)});
  GraphBuilder b;
  for (int i = 0; i <= 20; ++i) b.add_node(fixture::company("n" + std::to_string(100 + i)));
  for (std::size_t i = 0; i < links.size(); ++i) {
    b.add_edge(fixture::b2b("E" + std::to_string(100 + i), links[i].source, links[i].target));
  }
  b.set_root("n100");
  const EcosystemGraph g = std::move(b).build();
  const FlowResult f = nora_score(g, g.root(), NoraVariant::D);
  for (int d = 0; d <= 20; ++d) {
    EXPECT_NEAR(f.scores[g.index_of("n" + std::to_string(100 + d))], std::pow(0.95, d), 1e-15);
  }
}

TEST(NoraScore, DiamondVariantD) {
  const FlowResult f = nora_score(kSquare, kSquare.root(), NoraVariant::D);
  EXPECT_DOUBLE_EQ(f.scores[kSquare.index_of("a")], 0.475);
  EXPECT_DOUBLE_EQ(f.scores[kSquare.index_of("b")], 0.475);
  EXPECT_DOUBLE_EQ(f.scores[kSquare.index_of("t")], 0.9025);
  EXPECT_DOUBLE_EQ(f.scores[kSquare.root()], 1.0);
  EXPECT_EQ(f.variant, NoraVariant::D);
  EXPECT_EQ(f.gamma, 0.95);
}

TEST(NoraScore, TreeVariantsAgree) {
  const EcosystemGraph g = fixture::companies(
      {"s", "a", "b", "c", "d", "e"}, {{"s", "a"}, {"s", "b"}, {"a", "c"}, {"a", "d"}, {"b", "e"}}, "s");
  EXPECT_EQ(nora_score(g, g.root(), NoraVariant::D).scores, nora_score(g, g.root(), NoraVariant::T).scores);
}

TEST(NoraScore, IsolatedNodeScoresZero) {
  const EcosystemGraph g = fixture::companies({"s", "a", "x"}, {{"s", "a"}}, "s");
  for (NoraVariant v : {NoraVariant::D, NoraVariant::T}) {
    EXPECT_EQ(nora_score(g, g.root(), v).scores[g.index_of("x")], 0.0);
  }
}

TEST(NoraScoreProperty, MatchesPathSumOracle) {
  std::mt19937_64 rng(29);
  for (int i = 0; i < 100; ++i) {
    oracle::RandomGraphSpec spec;
    spec.integer_costs = i % 2 == 1;
    spec.self_loop_probability = 0.05;
    const EcosystemGraph g = oracle::random_graph(rng, spec);
    const auto d_oracle = oracle::path_sum_flow(g.node_count(), oracle::all_shortest_path_arcs(g, g.root()), g.root(), 0.95);
    const auto t_oracle = oracle::path_sum_flow(g.node_count(), oracle::bfs_orientation(g, g.root()), g.root(), 0.95);
    const auto d = nora_score(g, g.root(), NoraVariant::D).scores;
    const auto t = nora_score(g, g.root(), NoraVariant::T).scores;
    for (NodeIndex v = 0; v < g.node_count(); ++v) {
      EXPECT_NEAR(d[v], d_oracle[v], 1e-9);
      EXPECT_NEAR(t[v], t_oracle[v], 1e-9);
    }
  }
}

TEST(NoraScoreProperty, Deterministic) {
  std::mt19937_64 rng(30);
  for (int i = 0; i < 20; ++i) {
    oracle::RandomGraphSpec spec;
    spec.directed = i % 2 == 0;
    const EcosystemGraph g = oracle::random_graph(rng, spec);
    for (NoraVariant v : {NoraVariant::D, NoraVariant::T}) {
      EXPECT_EQ(nora_score(g, g.root(), v).scores, nora_score(g, g.root(), v).scores);
    }
  }
}

TEST(NoraScoreProperty, NonNegativeAndFinite) {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 50; ++i) {
    oracle::RandomGraphSpec spec;
    spec.directed = i % 2 == 0;
    spec.integer_costs = true;
    const EcosystemGraph g = oracle::random_graph(rng, spec);
    for (NoraVariant v : {NoraVariant::D, NoraVariant::T}) {
      for (double s : nora_score(g, g.root(), v).scores) {
        EXPECT_TRUE(std::isfinite(s));
        EXPECT_GE(s, 0.0);
      }
    }
  }
}
