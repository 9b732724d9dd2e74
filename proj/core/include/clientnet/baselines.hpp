#pragma once

#include <vector>

#include "clientnet/graph.hpp"

namespace clientnet {

// How `alpha` is read. The reference configuration gives alpha = 0.15, which
// in the usual rooted-PageRank reading is the restart probability.
enum class AlphaMeaning { RestartProbability, FollowProbability };

struct RootedPageRankConfig {
  double alpha = 0.15;
  double tolerance = 1.0e-6;
  int max_iterations = 100;
  AlphaMeaning alpha_meaning = AlphaMeaning::RestartProbability;

  double restart_probability() const {
    return alpha_meaning == AlphaMeaning::RestartProbability ? alpha : 1.0 - alpha;
  }
};

struct RootedPageRankResult {
  std::vector<double> scores;
  int iterations = 0;
  // False when max_iterations was reached first; scores are still returned.
  bool converged = false;
};

// Stationary distribution of a walk that restarts at `source` with the
// restart probability and otherwise follows an outgoing edge chosen with
// probability proportional to its weight. Walkers on nodes without outgoing
// edges restart. Stops when the L1 change drops below the tolerance.
RootedPageRankResult rooted_pagerank(const EcosystemGraph& g, NodeIndex source,
                                     const RootedPageRankConfig& config = {});

struct PropFlowConfig {
  int depth = 10;
};

// Depth-limited flow: the source holds 1, and each node at depth < `depth`
// forwards everything it received to its strictly deeper neighbours in
// proportion to edge weight. A node's score is its total inflow (the source
// keeps 1). Nodes deeper than `depth` score 0.
std::vector<double> propflow(const EcosystemGraph& g, NodeIndex source, const PropFlowConfig& config = {});

}  // namespace clientnet
