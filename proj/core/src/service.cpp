#include "clientnet/service.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <optional>
#include <queue>
#include <set>
#include <utility>

#include "clientnet/error.hpp"
#include "text.hpp"

namespace clientnet {

namespace {

using Path = std::vector<NodeIndex>;

struct Blocked {
  std::vector<std::uint8_t> nodes;
  std::set<std::pair<NodeIndex, NodeIndex>> links;  // unordered pair, smaller first

  bool link(NodeIndex a, NodeIndex b) const {
    return !links.empty() && links.count(a < b ? std::pair{a, b} : std::pair{b, a}) != 0;
  }
};

// Dijkstra over the simple undirected projection, each node pair costing the
// cheapest live edge between them. Ties settle by node index so the returned
// path is deterministic.
std::optional<std::pair<double, Path>> shortest_path(const EcosystemGraph& g, NodeIndex from, NodeIndex to,
                                                     const Blocked& blocked) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(g.node_count(), kInf);
  std::vector<NodeIndex> pred(g.node_count(), kNoNode);
  std::vector<std::uint8_t> done(g.node_count(), 0);
  using Item = std::pair<double, NodeIndex>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  dist[from] = 0.0;
  heap.emplace(0.0, from);
  while (!heap.empty()) {
    auto [d, u] = heap.top();
    heap.pop();
    if (done[u]) continue;
    done[u] = 1;
    if (u == to) break;
    for (const Incidence& inc : g.incidences(u)) {
      const NodeIndex v = inc.neighbor;
      if (v == u || done[v] || blocked.nodes[v] || blocked.link(u, v)) continue;
      const double nd = d + g.edge(inc.edge).cost;
      if (nd < dist[v]) {
        dist[v] = nd;
        pred[v] = u;
        heap.emplace(nd, v);
      }
    }
  }
  if (!done[to]) return std::nullopt;
  Path path;
  for (NodeIndex v = to; v != kNoNode; v = pred[v]) path.push_back(v);
  std::reverse(path.begin(), path.end());
  return std::pair{dist[to], std::move(path)};
}

double path_cost(const EcosystemGraph& g, const Path& p) {
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < p.size(); ++i) {
    double best = std::numeric_limits<double>::infinity();
    for (const Incidence& inc : g.incidences(p[i])) {
      if (inc.neighbor == p[i + 1]) best = std::min(best, g.edge(inc.edge).cost);
    }
    total += best;
  }
  return total;
}

std::vector<Path> yen(const EcosystemGraph& g, NodeIndex source, NodeIndex target, std::size_t k) {
  std::vector<Path> accepted;
  Blocked blocked;
  blocked.nodes.assign(g.node_count(), 0);
  auto first = shortest_path(g, source, target, blocked);
  if (!first) return accepted;
  accepted.push_back(std::move(first->second));

  std::set<std::pair<double, Path>> candidates;
  while (accepted.size() < k) {
    const Path prev = accepted.back();
    for (std::size_t i = 0; i + 1 < prev.size(); ++i) {
      const NodeIndex spur = prev[i];
      blocked.links.clear();
      for (const Path& p : accepted) {
        if (p.size() > i + 1 && std::equal(prev.begin(), prev.begin() + static_cast<std::ptrdiff_t>(i) + 1, p.begin())) {
          blocked.links.insert(std::minmax(p[i], p[i + 1]));
        }
      }
      for (std::size_t j = 0; j < i; ++j) blocked.nodes[prev[j]] = 1;
      auto spur_path = shortest_path(g, spur, target, blocked);
      for (std::size_t j = 0; j < i; ++j) blocked.nodes[prev[j]] = 0;
      if (!spur_path) continue;
      Path total(prev.begin(), prev.begin() + static_cast<std::ptrdiff_t>(i));
      total.insert(total.end(), spur_path->second.begin(), spur_path->second.end());
      if (std::find(accepted.begin(), accepted.end(), total) != accepted.end()) continue;
      const double cost = path_cost(g, total);
      candidates.emplace(cost, std::move(total));
    }
    if (candidates.empty()) break;
    accepted.push_back(candidates.begin()->second);
    candidates.erase(candidates.begin());
  }
  return accepted;
}

const std::string& attr(const Node& n, const std::string& key) {
  static const std::string empty;
  auto it = n.attrs.find(key);
  return it == n.attrs.end() ? empty : it->second;
}

}  // namespace

ExplorerService::ExplorerService(EcosystemGraph graph, std::vector<double> scores, ExplorerOptions options)
    : graph_(std::move(graph)), scores_(std::move(scores)), options_(options) {
  if (scores_.size() != graph_.node_count()) {
    throw Error(ErrorCode::InvalidConfig, "score vector does not match the graph");
  }
  std::vector<NodeIndex> companies;
  for (NodeIndex n = 0; n < graph_.node_count(); ++n) {
    if (graph_.is_company(n) && n != graph_.root()) companies.push_back(n);
  }
  // Indices follow id order, so index order is the id tie-break.
  std::stable_sort(companies.begin(), companies.end(),
                   [&](NodeIndex a, NodeIndex b) { return scores_[a] > scores_[b]; });
  company_rank_.assign(graph_.node_count(), 0);
  for (std::size_t i = 0; i < companies.size(); ++i) company_rank_[companies[i]] = i + 1;
  lower_names_.resize(graph_.node_count());
  for (NodeIndex n = 0; n < graph_.node_count(); ++n) {
    if (graph_.is_company(n)) lower_names_[n] = text::to_lower(graph_.node(n).name);
  }
}

NodeIndex ExplorerService::resolve(std::string_view id) const {
  auto n = graph_.find_node(id);
  if (!n) throw Error(ErrorCode::UnknownId, "unknown id '" + std::string(id) + "'");
  return *n;
}

CompanySummary ExplorerService::summary(NodeIndex n) const {
  const Node& node = graph_.node(n);
  return {node.id,
          node.name,
          scores_[n],
          company_rank_[n],
          attr(node, "status"),
          attr(node, "location"),
          attr(node, "year_founded")};
}

std::vector<CompanySummary> ExplorerService::search_companies(std::string_view query, std::size_t limit) const {
  if (query.empty()) throw Error(ErrorCode::InvalidConfig, "empty search query");
  const std::string needle = text::to_lower(query);
  std::vector<std::pair<int, NodeIndex>> hits;
  for (NodeIndex n = 0; n < graph_.node_count(); ++n) {
    if (!graph_.is_company(n)) continue;
    const std::string& name = lower_names_[n];
    int quality;
    if (name == needle || text::to_lower(graph_.id(n)) == needle) {
      quality = 0;
    } else if (name.starts_with(needle)) {
      quality = 1;
    } else if (name.find(needle) != std::string::npos) {
      quality = 2;
    } else {
      continue;
    }
    hits.emplace_back(quality, n);
  }
  std::sort(hits.begin(), hits.end(), [&](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first < b.first;
    if (scores_[a.second] != scores_[b.second]) return scores_[a.second] > scores_[b.second];
    return a.second < b.second;
  });
  if (hits.size() > limit) hits.resize(limit);
  std::vector<CompanySummary> out;
  out.reserve(hits.size());
  for (const auto& [q, n] : hits) out.push_back(summary(n));
  return out;
}

CompanySummary ExplorerService::company(std::string_view id) const {
  const NodeIndex n = resolve(id);
  if (!graph_.is_company(n)) throw Error(ErrorCode::UnknownId, "'" + std::string(id) + "' is not a company");
  return summary(n);
}

RankedList ExplorerService::ranked(std::vector<NodeIndex> nodes, std::size_t limit) const {
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  std::stable_sort(nodes.begin(), nodes.end(), [&](NodeIndex a, NodeIndex b) { return scores_[a] > scores_[b]; });
  if (nodes.size() > limit) nodes.resize(limit);
  RankedList list;
  list.entries.reserve(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const Node& node = graph_.node(nodes[i]);
    list.entries.push_back({nodes[i], node.id, node.name, scores_[nodes[i]], i + 1});
  }
  return list;
}

RankedList ExplorerService::rank_list(std::span<const std::string> ids) const {
  std::vector<NodeIndex> nodes;
  nodes.reserve(ids.size());
  for (const std::string& id : ids) nodes.push_back(resolve(id));
  const std::size_t count = nodes.size();
  return ranked(std::move(nodes), count);
}

RankedList ExplorerService::whitespace_connections(std::string_view company_id, std::size_t limit) const {
  const NodeIndex start = resolve(company_id);
  if (!graph_.is_company(start)) {
    throw Error(ErrorCode::UnknownId, "'" + std::string(company_id) + "' is not a company");
  }
  std::vector<std::size_t> hops(graph_.node_count(), std::numeric_limits<std::size_t>::max());
  std::deque<NodeIndex> queue{start};
  hops[start] = 0;
  std::vector<NodeIndex> found;
  while (!queue.empty()) {
    const NodeIndex u = queue.front();
    queue.pop_front();
    if (hops[u] == options_.whitespace_hops) continue;
    for (const Incidence& inc : graph_.incidences(u)) {
      const NodeIndex v = inc.neighbor;
      if (v == graph_.root() || hops[v] != std::numeric_limits<std::size_t>::max()) continue;
      hops[v] = hops[u] + 1;
      queue.push_back(v);
      if (graph_.is_company(v) && !graph_.has_client_edge(v)) found.push_back(v);
    }
  }
  return ranked(std::move(found), limit);
}

Subgraph ExplorerService::subgraph_to_root(std::string_view target_id, std::size_t max_paths) const {
  const NodeIndex target = resolve(target_id);
  const NodeIndex root = graph_.root();
  Subgraph sub;
  if (target == root) {
    sub.nodes.push_back(root);
    sub.paths_included = 1;
    return sub;
  }
  if (max_paths == 0) throw Error(ErrorCode::InvalidConfig, "maxPaths must be positive");
  const std::vector<Path> paths = yen(graph_, root, target, max_paths);
  if (paths.empty()) {
    throw Error(ErrorCode::Disconnected, "'" + std::string(target_id) + "' is not connected to the root");
  }
  std::vector<std::uint8_t> seen(graph_.node_count(), 0);
  std::set<std::pair<NodeIndex, NodeIndex>> links;
  for (const Path& p : paths) {
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (!seen[p[i]]) {
        seen[p[i]] = 1;
        sub.nodes.push_back(p[i]);
      }
      if (i + 1 < p.size()) links.insert(std::minmax(p[i], p[i + 1]));
    }
  }
  for (const auto& [a, b] : links) {
    for (const Incidence& inc : graph_.incidences(a)) {
      if (inc.neighbor == b) sub.edges.push_back(inc.edge);
    }
  }
  std::sort(sub.edges.begin(), sub.edges.end());
  sub.edges.erase(std::unique(sub.edges.begin(), sub.edges.end()), sub.edges.end());
  sub.paths_included = paths.size();
  return sub;
}

Subgraph ExplorerService::expand_node(std::string_view node_id, std::size_t limit) const {
  const NodeIndex n = resolve(node_id);
  std::vector<NodeIndex> neighbours;
  for (const Incidence& inc : graph_.incidences(n)) {
    if (inc.neighbor != n) neighbours.push_back(inc.neighbor);
  }
  const RankedList top = ranked(std::move(neighbours), limit);
  Subgraph sub;
  std::vector<std::uint8_t> chosen(graph_.node_count(), 0);
  for (const RankedItem& item : top.entries) {
    sub.nodes.push_back(item.node);
    chosen[item.node] = 1;
  }
  for (const Incidence& inc : graph_.incidences(n)) {
    if (inc.neighbor != n && chosen[inc.neighbor]) sub.edges.push_back(inc.edge);
  }
  std::sort(sub.edges.begin(), sub.edges.end());
  sub.edges.erase(std::unique(sub.edges.begin(), sub.edges.end()), sub.edges.end());
  return sub;
}

}  // namespace clientnet
