#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "clientnet/graph.hpp"

namespace clientnet {

// A directed copy of a graph edge.
struct DirectedEdge {
  NodeIndex source;
  NodeIndex target;
  EdgeIndex edge;
  double weight = 1.0;

  friend bool operator==(const DirectedEdge&, const DirectedEdge&) = default;
};

struct DirectedMultigraph {
  std::size_t node_count = 0;
  std::vector<DirectedEdge> arcs;
};

// Node ordering and filtered directed edge set produced by network analysis.
// `distances` is filled by the shortest-path analyses only (infinity for
// unreachable nodes).
struct AnalysisResult {
  std::size_t node_count = 0;
  std::vector<NodeIndex> order;
  std::vector<DirectedEdge> prime_edges;
  std::vector<double> distances;
};

enum class NoraVariant { D, T };

enum class ShortestPathMethod {
  Auto,          // breadth-first search when all edge costs are equal
  Dijkstra,
  BreadthFirst,  // requires uniform costs
};

// How a node splits its flow among outgoing edges of the DAG.
enum class FlowSplit {
  EdgeCount,   // F(p) / od(p), parallel edges counted individually
  EdgeWeight,  // F(p) * weight(e) / total outgoing weight of p
};

struct FlowOptions {
  double gamma = 0.95;
  FlowSplit split = FlowSplit::EdgeCount;
  double source_flow = 1.0;
  ShortestPathMethod shortest_paths = ShortestPathMethod::Auto;
};

struct FlowResult {
  std::vector<double> scores;
  double gamma = 0.95;
  NoraVariant variant = NoraVariant::D;
};

// Dijkstra from `source` that also marks every edge lying on some shortest
// path; marked edges point from the nearer to the farther endpoint. Ties in
// the queue pop in NodeId order. Throws NodeNotFound.
AnalysisResult extended_dijkstra(const EcosystemGraph& g, NodeIndex source);

// Same contract as extended_dijkstra for graphs whose edges all have the same
// cost, in O(|V| + |E|). Throws InvalidConfig on non-uniform costs.
AnalysisResult breadth_first_analysis(const EcosystemGraph& g, NodeIndex source);

AnalysisResult analyze_network_d(const EcosystemGraph& g, NodeIndex source,
                                 ShortestPathMethod method = ShortestPathMethod::Auto);

// Directs every edge reachable from `source` from the endpoint discovered
// earlier by BFS to the one discovered later. Self-loops and edges outside
// the source's component are dropped. The result is acyclic.
DirectedMultigraph orient_by_bfs(const EcosystemGraph& g, NodeIndex source);

// Graph edges as arcs in their stored direction, without self-loops.
DirectedMultigraph as_directed(const EcosystemGraph& g);

// Greedy Eades-Lin-Smyth feedback arc set in O(|V| + |E|). Returns the `edge`
// field of every arc pointing backwards in the computed vertex sequence,
// sorted; self-loops are always included.
std::vector<EdgeIndex> eades_feedback_arc_set(const DirectedMultigraph& dg);

// Depth-first topological order of the nodes reachable from `source`.
std::vector<NodeIndex> topological_order(const DirectedMultigraph& dag, NodeIndex source);

// DAG from BFS orientation (undirected input) or Eades cycle removal
// (directed input), restricted to arcs reachable from `source`, plus a
// topological order of the reachable nodes.
AnalysisResult analyze_network_t(const EcosystemGraph& g, NodeIndex source);

// Single pass over `analysis.order`: F(source) = source_flow and
// F(v) = gamma * sum over DAG parents p of F(p) * share(p -> v).
// Throws GammaOutOfRange unless 0 < gamma < 1.
FlowResult propagate_flow(const AnalysisResult& analysis, NodeIndex source,
                          const FlowOptions& options = {});

FlowResult nora_score(const EcosystemGraph& g, NodeIndex source, NoraVariant variant,
                      const FlowOptions& options = {});

bool is_acyclic(std::size_t node_count, std::span<const DirectedEdge> arcs);

}  // namespace clientnet
