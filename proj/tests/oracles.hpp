#pragma once

// Reference implementations for tests. These are deliberately naive
// (exhaustive enumeration, dense linear algebra) and share no code with the
// library beyond the graph container.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "clientnet/graph.hpp"
#include "clientnet/metrics.hpp"

namespace oracle {

using clientnet::EcosystemGraph;
using clientnet::EdgeIndex;
using clientnet::NodeIndex;

inline std::string node_name(std::size_t i) {
  return (i < 10 ? "N0" : "N") + std::to_string(i);
}

struct RandomGraphSpec {
  std::size_t min_nodes = 1;
  std::size_t max_nodes = 12;
  double density = 0.3;
  bool directed = false;
  bool integer_costs = false;  // costs in {1, 2, 3}; otherwise all 1
  bool random_weights = false;  // weights in {1, 2, 3, 4}; otherwise all 1
  double parallel_probability = 0.1;
  double self_loop_probability = 0.0;
};

// Company-only graph over N00..Nxx with root N00, B2B edges.
inline EcosystemGraph random_graph(std::mt19937_64& rng, const RandomGraphSpec& spec) {
  std::uniform_int_distribution<std::size_t> size(spec.min_nodes, spec.max_nodes);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> cost(1, 3), weight(1, 4);
  const std::size_t n = size(rng);
  clientnet::GraphBuilder b;
  for (std::size_t i = 0; i < n; ++i) {
    clientnet::Node node;
    node.id = node_name(i);
    node.name = "Company " + std::to_string(i);
    b.add_node(node);
  }
  std::size_t next = 0;
  auto add = [&](std::size_t u, std::size_t v) {
    clientnet::EdgeRecord e;
    e.id = "E" + std::to_string(1000 + next++);
    e.source = node_name(u);
    e.target = node_name(v);
    e.label = clientnet::EdgeLabel::b2b({clientnet::B2bType::Kind::Investor, {}});
    e.cost = spec.integer_costs ? cost(rng) : 1.0;
    e.weight = spec.random_weights ? weight(rng) : 1.0;
    b.add_edge(e);
  };
  for (std::size_t u = 0; u < n; ++u) {
    if (unit(rng) < spec.self_loop_probability) add(u, u);
    for (std::size_t v = spec.directed ? 0 : u + 1; v < n; ++v) {
      if (u == v) continue;
      if (unit(rng) < spec.density) {
        add(u, v);
        if (unit(rng) < spec.parallel_probability) add(u, v);
      }
    }
  }
  b.set_root(node_name(0));
  b.set_directed(spec.directed);
  return std::move(b).build();
}

struct Arc {
  NodeIndex from;
  NodeIndex to;
  EdgeIndex edge;
  double weight = 1.0;

  friend auto operator<=>(const Arc&, const Arc&) = default;
};

// Traversals available from `u`: both directions for undirected edges,
// stored direction only for directed ones; self-loops excluded.
inline std::vector<Arc> out_arcs(const EcosystemGraph& g, NodeIndex u) {
  std::vector<Arc> arcs;
  g.for_each_edge([&](EdgeIndex e, const clientnet::Edge& edge) {
    if (edge.source == edge.target) return;
    if (edge.source == u) arcs.push_back({u, edge.target, e, edge.weight});
    else if (edge.target == u && !g.directed()) arcs.push_back({u, edge.source, e, edge.weight});
  });
  std::sort(arcs.begin(), arcs.end());
  return arcs;
}

// Single-source distances by Bellman-Ford relaxation to a fixed point.
inline std::vector<double> distances(const EcosystemGraph& g, NodeIndex s) {
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> d(g.node_count(), inf);
  d[s] = 0;
  for (bool changed = true; changed;) {
    changed = false;
    for (NodeIndex u = 0; u < g.node_count(); ++u) {
      if (d[u] == inf) continue;
      for (const Arc& a : out_arcs(g, u)) {
        if (d[u] + g.edge(a.edge).cost < d[a.to]) {
          d[a.to] = d[u] + g.edge(a.edge).cost;
          changed = true;
        }
      }
    }
  }
  return d;
}

// Every arc that appears on at least one shortest path from `s`, found by
// walking every shortest path explicitly. Costs must be exact (integers).
inline std::set<Arc> all_shortest_path_arcs(const EcosystemGraph& g, NodeIndex s) {
  const std::vector<double> d = distances(g, s);
  std::set<Arc> marked;
  std::function<void(NodeIndex, double)> walk = [&](NodeIndex u, double so_far) {
    for (const Arc& a : out_arcs(g, u)) {
      const double c = so_far + g.edge(a.edge).cost;
      if (c == d[a.to]) {
        marked.insert({a.from, a.to, a.edge, 1.0});
        walk(a.to, c);
      }
    }
  };
  walk(s, 0.0);
  return marked;
}

// Orientation from a plain BFS with neighbours visited in index order.
inline std::set<Arc> bfs_orientation(const EcosystemGraph& g, NodeIndex s) {
  std::vector<std::size_t> found(g.node_count(), std::numeric_limits<std::size_t>::max());
  std::vector<NodeIndex> queue{s};
  found[s] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (const Arc& a : out_arcs(g, queue[head])) {
      if (found[a.to] == std::numeric_limits<std::size_t>::max()) {
        found[a.to] = queue.size();
        queue.push_back(a.to);
      }
    }
  }
  std::set<Arc> arcs;
  g.for_each_edge([&](EdgeIndex e, const clientnet::Edge& edge) {
    if (edge.source == edge.target) return;
    const auto fs = found[edge.source], ft = found[edge.target];
    if (fs == std::numeric_limits<std::size_t>::max() || ft == std::numeric_limits<std::size_t>::max()) return;
    if (fs < ft) arcs.insert({edge.source, edge.target, e, 1.0});
    else arcs.insert({edge.target, edge.source, e, 1.0});
  });
  return arcs;
}

// F(v) = sum over directed paths s -> v of gamma^len * prod 1/od(p).
inline std::vector<double> path_sum_flow(std::size_t n, const std::set<Arc>& arcs, NodeIndex s, double gamma,
                                         double source_flow = 1.0) {
  std::vector<std::vector<Arc>> out(n);
  for (const Arc& a : arcs) out[a.from].push_back(a);
  std::vector<double> f(n, 0.0);
  std::function<void(NodeIndex, double)> walk = [&](NodeIndex u, double mass) {
    f[u] += mass;
    for (const Arc& a : out[u]) walk(a.to, mass * gamma / static_cast<double>(out[u].size()));
  };
  walk(s, source_flow);
  f[s] = source_flow;
  return f;
}

inline bool acyclic(std::size_t n, const std::vector<std::pair<NodeIndex, NodeIndex>>& arcs) {
  // Repeatedly delete nodes without incoming arcs.
  std::vector<std::size_t> indeg(n, 0);
  for (auto [u, v] : arcs) ++indeg[v];
  std::vector<std::uint8_t> gone(n, 0);
  for (std::size_t removed = 0;;) {
    bool progress = false;
    for (NodeIndex u = 0; u < n; ++u) {
      if (gone[u] || indeg[u] != 0) continue;
      gone[u] = 1;
      ++removed;
      progress = true;
      for (auto [a, b] : arcs) {
        if (a == u) --indeg[b];
      }
    }
    if (removed == n) return true;
    if (!progress) return false;
  }
}

// Stationary distribution of the restart walk, solved directly:
// (I - M) pi = r e_s by Gaussian elimination with partial pivoting.
inline std::vector<double> rooted_pagerank_exact(const EcosystemGraph& g, NodeIndex s, double restart) {
  const std::size_t n = g.node_count();
  std::vector<std::vector<double>> a(n, std::vector<double>(n + 1, 0.0));
  for (std::size_t i = 0; i < n; ++i) a[i][i] = 1.0;
  for (NodeIndex u = 0; u < n; ++u) {
    std::vector<std::pair<NodeIndex, double>> moves;
    double total = 0.0;
    g.for_each_edge([&](EdgeIndex, const clientnet::Edge& edge) {
      if (edge.source == u) moves.emplace_back(edge.target, edge.weight);
      else if (edge.target == u && !g.directed()) moves.emplace_back(edge.source, edge.weight);
      else return;
      total += edge.weight;
    });
    if (moves.empty()) {
      a[s][u] -= 1.0 - restart;
      continue;
    }
    for (auto [v, w] : moves) a[v][u] -= (1.0 - restart) * w / total;
  }
  a[s][n] = restart;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t pivot = c;
    for (std::size_t r = c + 1; r < n; ++r) {
      if (std::abs(a[r][c]) > std::abs(a[pivot][c])) pivot = r;
    }
    std::swap(a[c], a[pivot]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c] == 0.0) continue;
      const double factor = a[r][c] / a[c][c];
      for (std::size_t k = c; k <= n; ++k) a[r][k] -= factor * a[c][k];
    }
  }
  std::vector<double> pi(n);
  for (std::size_t i = 0; i < n; ++i) pi[i] = a[i][n] / a[i][i];
  return pi;
}

// Area under the ROC polyline through every distinct-score threshold.
inline double trapezoid_auroc(std::vector<std::pair<double, bool>> scored) {
  std::sort(scored.begin(), scored.end(), [](const auto& x, const auto& y) { return x.first > y.first; });
  double pos = 0, neg = 0;
  for (const auto& [s, p] : scored) (p ? pos : neg) += 1;
  double area = 0, tp = 0, fp = 0;
  for (std::size_t i = 0; i < scored.size();) {
    double dtp = 0, dfp = 0;
    std::size_t j = i;
    for (; j < scored.size() && scored[j].first == scored[i].first; ++j) (scored[j].second ? dtp : dfp) += 1;
    area += (dfp / neg) * ((tp + tp + dtp) / (2 * pos));
    tp += dtp;
    fp += dfp;
    i = j;
  }
  return area;
}

// Fraction of (positive, negative) pairs ordered correctly, ties one half.
inline double pairwise_auroc(const std::vector<std::pair<double, bool>>& scored) {
  double good = 0, pairs = 0;
  for (const auto& [sp, p] : scored) {
    if (!p) continue;
    for (const auto& [sn, n] : scored) {
      if (n) continue;
      pairs += 1;
      good += sp > sn ? 1.0 : sp == sn ? 0.5 : 0.0;
    }
  }
  return good / pairs;
}

inline clientnet::LabeledRanking ranking_from_labels(const std::vector<bool>& positive_in_order) {
  std::vector<clientnet::RankedEntry> entries;
  for (std::size_t i = 0; i < positive_in_order.size(); ++i) {
    entries.push_back({"R" + std::to_string(100 + i), static_cast<double>(positive_in_order.size() - i),
                       positive_in_order[i] ? clientnet::Label::Positive : clientnet::Label::Negative});
  }
  return clientnet::LabeledRanking(std::move(entries));
}

}  // namespace oracle
