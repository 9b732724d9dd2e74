#include "clientnet/nora.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <queue>
#include <string>
#include <utility>

#include "clientnet/error.hpp"

namespace clientnet {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::uint32_t kUnseen = std::numeric_limits<std::uint32_t>::max();

void require_node(const EcosystemGraph& g, NodeIndex source) {
  if (source >= g.node_count()) {
    throw Error(ErrorCode::NodeNotFound, "source index " + std::to_string(source) + " out of range");
  }
}

// Path costs are sums of reals; equal-cost alternatives may differ in the
// last few ulps depending on summation order.
bool same_cost(double a, double b) {
  if (std::isinf(a) || std::isinf(b)) return a == b;
  return std::abs(a - b) <= 1e-12 * std::max({1.0, std::abs(a), std::abs(b)});
}

bool arc_less(const DirectedEdge& x, const DirectedEdge& y) {
  return std::tie(x.target, x.edge) < std::tie(y.target, y.edge);
}

// Out-arcs grouped by source, each group sorted by (target, edge).
struct ArcIndex {
  std::vector<std::size_t> offset;
  std::vector<DirectedEdge> arcs;

  ArcIndex(std::size_t n, std::span<const DirectedEdge> input) : offset(n + 1, 0), arcs(input.size()) {
    for (const DirectedEdge& a : input) ++offset[a.source + 1];
    for (std::size_t v = 0; v < n; ++v) offset[v + 1] += offset[v];
    std::vector<std::size_t> fill(offset.begin(), offset.end() - 1);
    for (const DirectedEdge& a : input) arcs[fill[a.source]++] = a;
    for (std::size_t v = 0; v < n; ++v) {
      const auto first = arcs.begin() + static_cast<std::ptrdiff_t>(offset[v]);
      const auto last = arcs.begin() + static_cast<std::ptrdiff_t>(offset[v + 1]);
      if (!std::is_sorted(first, last, arc_less)) std::sort(first, last, arc_less);
    }
  }

  std::span<const DirectedEdge> out(NodeIndex v) const {
    return {arcs.data() + offset[v], offset[v + 1] - offset[v]};
  }
};

}  // namespace

AnalysisResult extended_dijkstra(const EcosystemGraph& g, NodeIndex source) {
  require_node(g, source);
  const std::size_t n = g.node_count();
  AnalysisResult result;
  result.node_count = n;
  result.distances.assign(n, kInf);

  std::vector<std::uint8_t> closed(n, 0);
  std::vector<std::vector<DirectedEdge>> marked(n);
  using Entry = std::pair<double, NodeIndex>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;

  result.distances[source] = 0.0;
  open.emplace(0.0, source);
  while (!open.empty()) {
    const auto [d, u] = open.top();
    open.pop();
    if (closed[u] || d > result.distances[u]) continue;
    closed[u] = 1;
    result.order.push_back(u);

    for (const Incidence& inc : g.incidences(u)) {
      if (!inc.outgoing) continue;
      const Edge& e = g.edge(inc.edge);
      const NodeIndex c = inc.neighbor;
      const double candidate = d + e.cost;
      double& best = result.distances[c];
      if (candidate < best && !same_cost(candidate, best)) {
        best = candidate;
        open.emplace(candidate, c);
        marked[c].clear();
      }
      if (!closed[c] && same_cost(candidate, best)) {
        marked[c].push_back({u, c, inc.edge, e.weight});
      }
    }
  }

  for (NodeIndex v : result.order) {
    result.prime_edges.insert(result.prime_edges.end(), marked[v].begin(), marked[v].end());
  }
  return result;
}

AnalysisResult breadth_first_analysis(const EcosystemGraph& g, NodeIndex source) {
  require_node(g, source);
  if (!g.uniform_costs()) {
    throw Error(ErrorCode::InvalidConfig, "breadth-first analysis needs uniform edge costs");
  }
  const std::size_t n = g.node_count();
  double unit = 1.0;
  for (EdgeIndex e = 0; e < g.edge_slot_count(); ++e) {
    if (g.is_live(e)) {
      unit = g.edge(e).cost;
      break;
    }
  }

  AnalysisResult result;
  result.node_count = n;
  std::vector<std::uint32_t> hops(n, kUnseen);
  result.order.reserve(n);
  hops[source] = 0;
  result.order.push_back(source);
  for (std::size_t head = 0; head < result.order.size(); ++head) {
    const NodeIndex u = result.order[head];
    const std::uint32_t next = hops[u] + 1;
    for (const Incidence& inc : g.incidences(u)) {
      if (!inc.outgoing) continue;
      const NodeIndex c = inc.neighbor;
      if (hops[c] == kUnseen) {
        hops[c] = next;
        result.order.push_back(c);
      }
      if (hops[c] == next) {
        result.prime_edges.push_back({u, c, inc.edge, g.edge_weight(inc.edge)});
      }
    }
  }

  result.distances.assign(n, kInf);
  for (NodeIndex v : result.order) result.distances[v] = hops[v] * unit;
  return result;
}

AnalysisResult analyze_network_d(const EcosystemGraph& g, NodeIndex source, ShortestPathMethod method) {
  switch (method) {
    case ShortestPathMethod::Dijkstra:
      return extended_dijkstra(g, source);
    case ShortestPathMethod::BreadthFirst:
      return breadth_first_analysis(g, source);
    case ShortestPathMethod::Auto:
      break;
  }
  return g.uniform_costs() ? breadth_first_analysis(g, source) : extended_dijkstra(g, source);
}

DirectedMultigraph orient_by_bfs(const EcosystemGraph& g, NodeIndex source) {
  require_node(g, source);
  const std::size_t n = g.node_count();
  std::vector<std::uint32_t> discovery(n, kUnseen);
  std::vector<NodeIndex> queue;
  queue.reserve(n);
  discovery[source] = 0;
  queue.push_back(source);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (const Incidence& inc : g.incidences(queue[head])) {
      if (discovery[inc.neighbor] == kUnseen) {
        discovery[inc.neighbor] = static_cast<std::uint32_t>(queue.size());
        queue.push_back(inc.neighbor);
      }
    }
  }

  DirectedMultigraph dg;
  dg.node_count = n;
  g.for_each_edge([&](EdgeIndex e, const Edge& edge) {
    if (edge.is_self_loop() || discovery[edge.source] == kUnseen) return;
    if (discovery[edge.source] < discovery[edge.target]) {
      dg.arcs.push_back({edge.source, edge.target, e, edge.weight});
    } else {
      dg.arcs.push_back({edge.target, edge.source, e, edge.weight});
    }
  });
  return dg;
}

DirectedMultigraph as_directed(const EcosystemGraph& g) {
  DirectedMultigraph dg;
  dg.node_count = g.node_count();
  g.for_each_edge([&](EdgeIndex e, const Edge& edge) {
    if (!edge.is_self_loop()) dg.arcs.push_back({edge.source, edge.target, e, edge.weight});
  });
  return dg;
}

std::vector<NodeIndex> topological_order(const DirectedMultigraph& dag, NodeIndex source) {
  const std::size_t n = dag.node_count;
  if (source >= n) throw Error(ErrorCode::NodeNotFound, "source index out of range");
  const ArcIndex index(n, dag.arcs);

  enum : std::uint8_t { kWhite, kGray, kBlack };
  std::vector<std::uint8_t> colour(n, kWhite);
  std::vector<NodeIndex> postorder;
  std::vector<std::pair<NodeIndex, std::size_t>> stack;
  stack.emplace_back(source, 0);
  colour[source] = kGray;
  while (!stack.empty()) {
    auto& [v, next] = stack.back();
    const auto out = index.out(v);
    if (next == out.size()) {
      colour[v] = kBlack;
      postorder.push_back(v);
      stack.pop_back();
      continue;
    }
    const NodeIndex c = out[next++].target;
    if (colour[c] == kGray) throw Error(ErrorCode::InvalidConfig, "graph passed as DAG has a cycle");
    if (colour[c] == kWhite) {
      colour[c] = kGray;
      stack.emplace_back(c, 0);
    }
  }
  std::reverse(postorder.begin(), postorder.end());
  return postorder;
}

AnalysisResult analyze_network_t(const EcosystemGraph& g, NodeIndex source) {
  require_node(g, source);
  DirectedMultigraph dag;
  if (g.directed()) {
    dag = as_directed(g);
    const auto feedback = eades_feedback_arc_set(dag);
    std::erase_if(dag.arcs, [&](const DirectedEdge& a) {
      return std::binary_search(feedback.begin(), feedback.end(), a.edge);
    });
  } else {
    dag = orient_by_bfs(g, source);
  }

  AnalysisResult result;
  result.node_count = g.node_count();
  result.order = topological_order(dag, source);
  std::vector<std::uint8_t> reached(g.node_count(), 0);
  for (NodeIndex v : result.order) reached[v] = 1;
  for (const DirectedEdge& a : dag.arcs) {
    if (reached[a.source]) result.prime_edges.push_back(a);
  }
  return result;
}

FlowResult propagate_flow(const AnalysisResult& analysis, NodeIndex source, const FlowOptions& options) {
  if (!(options.gamma > 0.0 && options.gamma < 1.0)) {
    throw Error(ErrorCode::GammaOutOfRange, "gamma must lie in (0, 1), got " + std::to_string(options.gamma));
  }
  const std::size_t n = analysis.node_count;
  if (source >= n) throw Error(ErrorCode::NodeNotFound, "source index out of range");

  FlowResult result;
  result.gamma = options.gamma;
  result.scores.assign(n, 0.0);
  result.scores[source] = options.source_flow;

  // Breadth-first analysis already emits arcs grouped by source in `order`
  // and sorted within each group; anything else goes through an index.
  const std::span<const DirectedEdge> arcs = analysis.prime_edges;
  std::size_t consumed = 0;
  for (NodeIndex p : analysis.order) {
    const std::size_t begin = consumed;
    while (consumed < arcs.size() && arcs[consumed].source == p) {
      if (consumed > begin && !arc_less(arcs[consumed - 1], arcs[consumed])) break;
      ++consumed;
    }
    if (consumed < arcs.size() && arcs[consumed].source == p) break;
  }
  std::optional<ArcIndex> index;
  if (consumed != arcs.size()) index.emplace(n, arcs);
  std::size_t cursor = 0;

  for (NodeIndex p : analysis.order) {
    std::span<const DirectedEdge> children;
    if (index) {
      children = index->out(p);
    } else {
      const std::size_t begin = cursor;
      while (cursor < arcs.size() && arcs[cursor].source == p) ++cursor;
      children = arcs.subspan(begin, cursor - begin);
    }
    if (children.empty() || result.scores[p] == 0.0) continue;
    double total = 0.0;
    if (options.split == FlowSplit::EdgeWeight) {
      for (const DirectedEdge& a : children) total += a.weight;
    } else {
      total = static_cast<double>(children.size());
    }
    const double emitted = options.gamma * result.scores[p] / total;
    for (const DirectedEdge& a : children) {
      if (a.target == source) continue;
      const double share = options.split == FlowSplit::EdgeWeight ? a.weight : 1.0;
      result.scores[a.target] += emitted * share;
    }
  }
  return result;
}

FlowResult nora_score(const EcosystemGraph& g, NodeIndex source, NoraVariant variant,
                      const FlowOptions& options) {
  const AnalysisResult analysis = variant == NoraVariant::D
                                      ? analyze_network_d(g, source, options.shortest_paths)
                                      : analyze_network_t(g, source);
  FlowResult result = propagate_flow(analysis, source, options);
  result.variant = variant;
  return result;
}

bool is_acyclic(std::size_t node_count, std::span<const DirectedEdge> arcs) {
  std::vector<std::size_t> indeg(node_count, 0);
  for (const DirectedEdge& a : arcs) ++indeg[a.target];
  const ArcIndex index(node_count, arcs);
  std::vector<NodeIndex> ready;
  for (NodeIndex v = 0; v < node_count; ++v) {
    if (indeg[v] == 0) ready.push_back(v);
  }
  std::size_t seen = 0;
  while (!ready.empty()) {
    const NodeIndex v = ready.back();
    ready.pop_back();
    ++seen;
    for (const DirectedEdge& a : index.out(v)) {
      if (--indeg[a.target] == 0) ready.push_back(a.target);
    }
  }
  return seen == node_count;
}

}  // namespace clientnet
