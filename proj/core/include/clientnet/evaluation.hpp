#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "clientnet/baselines.hpp"
#include "clientnet/graph.hpp"
#include "clientnet/metrics.hpp"
#include "clientnet/nora.hpp"

namespace clientnet {

struct FoldSpec {
  std::vector<std::vector<NodeIndex>> folds;

  std::size_t fold_count() const { return folds.size(); }
};

// Stratified folds over the evaluation population: clients that have links
// other than their client edge, plus all non-clients. Each class is shuffled
// with `seed` and cut into fold_count nearly equal blocks; fold i takes block
// i of each class, so every fold's client count is within one node of its
// proportional share. Throws InvalidConfig (fold_count < 2) and
// InsufficientPopulation when either class has fewer members than folds.
FoldSpec sample_folds(const EcosystemGraph& g, std::size_t fold_count, std::uint64_t seed);

using ScoreFunction = std::function<std::vector<double>(const EcosystemGraph&, NodeIndex root)>;

struct ScoringAlgorithm {
  std::string name;
  ScoreFunction score;
};

struct AlgorithmSettings {
  FlowOptions nora;  // gamma 0.95
  RootedPageRankConfig rooted_pagerank;
  PropFlowConfig propflow;
};

// Recognised names: nora-d, nora-t, rpr, propflow. Throws InvalidConfig.
ScoringAlgorithm make_algorithm(const std::string& name, const AlgorithmSettings& settings = {});
std::vector<ScoringAlgorithm> standard_algorithms(const AlgorithmSettings& settings = {});

// Which nodes are ranked when a fold is scored.
enum class CandidateScope {
  Fold,                // the fold's own nodes
  FoldAndNonClients,   // plus every population non-client outside the fold
};

struct EvaluationOptions {
  std::size_t fold_count = 10;
  std::uint64_t seed = 1;
  CandidateScope scope = CandidateScope::Fold;
  // Folds fan out to worker threads, each on its own copy of the graph.
  std::size_t threads = 1;
};

struct AlgorithmReport {
  std::string name;
  std::vector<MetricRow> folds;
  MetricRow average;
};

struct EvaluationReport {
  std::vector<AlgorithmReport> algorithms;
  std::size_t fold_count = 0;
};

// Stratified client-edge holdout. For every fold all client edges of the
// fold's clients are removed, each algorithm scores the modified graph, the
// fold is ranked (held-out clients positive) and the edges are restored.
// The graph's edge multiset is identical before and after; failure to
// restore throws RestoreFailed.
EvaluationReport run_evaluation(EcosystemGraph& g, const std::vector<ScoringAlgorithm>& algorithms,
                                const EvaluationOptions& options = {});
EvaluationReport run_evaluation(EcosystemGraph& g, const std::vector<ScoringAlgorithm>& algorithms,
                                const FoldSpec& folds, const EvaluationOptions& options = {});

// Ranking of `candidates` by `scores`; positives are the held-out clients.
LabeledRanking rank_candidates(const EcosystemGraph& g, std::span<const double> scores,
                               std::span<const NodeIndex> candidates, std::span<const NodeIndex> positives);

// One row per algorithm with the averaged metrics.
void write_summary_csv(std::ostream& out, const EvaluationReport& report);
// One row per (algorithm, fold).
void write_fold_csv(std::ostream& out, const EvaluationReport& report);

}  // namespace clientnet
