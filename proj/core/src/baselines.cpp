#include "clientnet/baselines.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "clientnet/error.hpp"

namespace clientnet {

namespace {

void require_node(const EcosystemGraph& g, NodeIndex source) {
  if (source >= g.node_count()) {
    throw Error(ErrorCode::NodeNotFound, "source index " + std::to_string(source) + " out of range");
  }
}

}  // namespace

RootedPageRankResult rooted_pagerank(const EcosystemGraph& g, NodeIndex source,
                                     const RootedPageRankConfig& config) {
  require_node(g, source);
  const double restart = config.restart_probability();
  if (!(restart > 0.0 && restart < 1.0) || !(config.tolerance > 0.0) || config.max_iterations < 1) {
    throw Error(ErrorCode::InvalidConfig, "rooted PageRank needs 0 < alpha < 1, tolerance > 0, iterations >= 1");
  }
  const std::size_t n = g.node_count();
  const double follow = 1.0 - restart;

  std::vector<double> out_weight(n, 0.0);
  for (NodeIndex u = 0; u < n; ++u) {
    for (const Incidence& inc : g.incidences(u)) {
      if (inc.outgoing) out_weight[u] += g.edge(inc.edge).weight;
    }
  }

  RootedPageRankResult result;
  std::vector<double> rank(n, 0.0), next(n, 0.0);
  rank[source] = 1.0;
  while (result.iterations < config.max_iterations) {
    std::fill(next.begin(), next.end(), 0.0);
    double restarting = 0.0;
    for (NodeIndex u = 0; u < n; ++u) {
      if (rank[u] == 0.0) continue;
      if (out_weight[u] == 0.0) {
        restarting += rank[u];
        continue;
      }
      const double moving = follow * rank[u] / out_weight[u];
      for (const Incidence& inc : g.incidences(u)) {
        if (inc.outgoing) next[inc.neighbor] += moving * g.edge(inc.edge).weight;
      }
    }
    // Every walker restarts with probability `restart`; dangling ones always do.
    next[source] += restart + follow * restarting;

    double change = 0.0;
    for (std::size_t v = 0; v < n; ++v) change += std::abs(next[v] - rank[v]);
    rank.swap(next);
    ++result.iterations;
    if (change < config.tolerance) {
      result.converged = true;
      break;
    }
  }
  result.scores = std::move(rank);
  return result;
}

std::vector<double> propflow(const EcosystemGraph& g, NodeIndex source, const PropFlowConfig& config) {
  require_node(g, source);
  if (config.depth < 0) throw Error(ErrorCode::InvalidConfig, "PropFlow depth must be >= 0");
  const std::size_t n = g.node_count();
  constexpr int kUnseen = std::numeric_limits<int>::max();
  const int limit = config.depth;

  std::vector<int> depth(n, kUnseen);
  std::vector<double> flow(n, 0.0);
  std::vector<NodeIndex> queue{source};
  depth[source] = 0;
  flow[source] = 1.0;
  // BFS order is non-decreasing in depth, so every node has received all of
  // its inflow before it is expanded.
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const NodeIndex u = queue[head];
    if (depth[u] >= limit) continue;
    double deeper_weight = 0.0;
    for (const Incidence& inc : g.incidences(u)) {
      if (!inc.outgoing) continue;
      int& d = depth[inc.neighbor];
      if (d == kUnseen) {
        d = depth[u] + 1;
        queue.push_back(inc.neighbor);
      }
      if (d == depth[u] + 1) deeper_weight += g.edge(inc.edge).weight;
    }
    if (deeper_weight == 0.0 || flow[u] == 0.0) continue;
    for (const Incidence& inc : g.incidences(u)) {
      if (inc.outgoing && depth[inc.neighbor] == depth[u] + 1) {
        flow[inc.neighbor] += flow[u] * g.edge(inc.edge).weight / deeper_weight;
      }
    }
  }
  return flow;
}

}  // namespace clientnet
