#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "clientnet/graph.hpp"

namespace clientnet {

struct CompanySummary {
  std::string id;
  std::string name;
  double score = 0.0;
  // 1-based position among non-root companies by descending score with id
  // tie-break; 0 for the root.
  std::size_t rank = 0;
  std::string status;
  std::string location;
  std::string year_founded;
};

struct RankedItem {
  NodeIndex node = kNoNode;
  std::string id;
  std::string name;
  double score = 0.0;
  std::size_t rank = 0;  // 1-based position in the list
};

struct RankedList {
  std::vector<RankedItem> entries;
};

struct Subgraph {
  std::vector<NodeIndex> nodes;
  std::vector<EdgeIndex> edges;
  std::size_t paths_included = 0;
};

struct ExplorerOptions {
  std::size_t whitespace_hops = 2;
  std::size_t default_max_paths = 5;
  std::size_t default_limit = 20;
};

// Read-only queries over a scored graph snapshot. Every method is const and
// safe to call concurrently. Exploration treats edges as undirected.
class ExplorerService {
 public:
  // Throws InvalidConfig when `scores` does not cover every node.
  ExplorerService(EcosystemGraph graph, std::vector<double> scores, ExplorerOptions options = {});

  const EcosystemGraph& graph() const { return graph_; }
  const ExplorerOptions& options() const { return options_; }
  double score(NodeIndex n) const { return scores_[n]; }
  std::size_t company_rank(NodeIndex n) const { return company_rank_[n]; }

  CompanySummary summary(NodeIndex company) const;

  // Case-insensitive match on company names (and exact id match), ordered by
  // match quality (exact, prefix, substring) then score. Throws InvalidConfig
  // on an empty query.
  std::vector<CompanySummary> search_companies(std::string_view query, std::size_t limit) const;

  // Throws UnknownId.
  CompanySummary company(std::string_view id) const;

  // Deduplicated ids ordered by descending score, id tie-break.
  // Throws UnknownId naming the first offending id.
  RankedList rank_list(std::span<const std::string> ids) const;

  // Non-client companies within `whitespace_hops` of the given company,
  // not routing through the root. Throws UnknownId.
  RankedList whitespace_connections(std::string_view company_id, std::size_t limit) const;

  // Union of up to `max_paths` loopless shortest root-target paths (Yen's
  // algorithm over the simple projection), with every parallel edge between
  // consecutive path nodes. Throws UnknownId, Disconnected.
  Subgraph subgraph_to_root(std::string_view target_id, std::size_t max_paths) const;

  // The `limit` highest-scored neighbours of a node and every edge joining
  // them to it; the node itself is not repeated. Throws UnknownId.
  Subgraph expand_node(std::string_view node_id, std::size_t limit) const;

 private:
  NodeIndex resolve(std::string_view id) const;
  RankedList ranked(std::vector<NodeIndex> nodes, std::size_t limit) const;

  EcosystemGraph graph_;
  std::vector<double> scores_;
  std::vector<std::size_t> company_rank_;
  std::vector<std::string> lower_names_;
  ExplorerOptions options_;
};

}  // namespace clientnet
