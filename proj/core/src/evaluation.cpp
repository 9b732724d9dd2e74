#include "clientnet/evaluation.hpp"

#include <algorithm>
#include <ostream>
#include <random>
#include <thread>

#include "clientnet/error.hpp"
#include "text.hpp"

namespace clientnet {

namespace {

struct Population {
  std::vector<NodeIndex> clients;
  std::vector<NodeIndex> non_clients;
};

Population evaluation_population(const EcosystemGraph& g) {
  ClientPartition part = g.client_partition();
  Population pop;
  std::set_difference(part.clients.begin(), part.clients.end(), part.root_only_clients.begin(),
                      part.root_only_clients.end(), std::back_inserter(pop.clients));
  pop.non_clients = std::move(part.non_clients);
  return pop;
}

struct HeldOut {
  NodeIndex node;
  Edge edge;
};

std::vector<MetricRow> evaluate_fold(EcosystemGraph& g, const std::vector<ScoringAlgorithm>& algorithms,
                                     const std::vector<NodeIndex>& fold,
                                     const std::vector<NodeIndex>& extra_candidates) {
  std::vector<NodeIndex> positives;
  for (NodeIndex n : fold) {
    if (g.has_client_edge(n)) positives.push_back(n);
  }
  std::sort(positives.begin(), positives.end());

  const std::size_t edges_before = g.edge_count();
  std::vector<HeldOut> held_out;
  for (NodeIndex n : positives) {
    while (g.has_client_edge(n)) held_out.push_back({n, g.remove_client_link(n)});
  }

  auto restore = [&] {
    for (const HeldOut& h : held_out) {
      try {
        g.add_client_link(h.node, h.edge);
      } catch (const Error& e) {
        throw Error(ErrorCode::RestoreFailed, "cannot restore edge '" + h.edge.id + "': " + e.what());
      }
    }
    if (g.edge_count() != edges_before) {
      throw Error(ErrorCode::RestoreFailed, "edge count differs after restoring held-out client edges");
    }
  };

  std::vector<NodeIndex> candidates = fold;
  candidates.insert(candidates.end(), extra_candidates.begin(), extra_candidates.end());

  std::vector<MetricRow> rows;
  try {
    for (const ScoringAlgorithm& algorithm : algorithms) {
      const std::vector<double> scores = algorithm.score(g, g.root());
      if (scores.size() != g.node_count()) {
        throw Error(ErrorCode::InvalidConfig, "algorithm '" + algorithm.name + "' returned wrong score count");
      }
      rows.push_back(compute_metrics(rank_candidates(g, scores, candidates, positives)));
    }
  } catch (...) {
    restore();
    throw;
  }
  restore();
  return rows;
}

std::string format_row(const MetricRow& row) {
  std::string out;
  for (double v : row.values) {
    out += ',';
    out += text::format_double(v);
  }
  return out;
}

}  // namespace

FoldSpec sample_folds(const EcosystemGraph& g, std::size_t fold_count, std::uint64_t seed) {
  if (fold_count < 2) throw Error(ErrorCode::InvalidConfig, "need at least two folds");
  Population pop = evaluation_population(g);

  std::mt19937_64 rng(seed);
  std::shuffle(pop.clients.begin(), pop.clients.end(), rng);
  std::shuffle(pop.non_clients.begin(), pop.non_clients.end(), rng);

  // Each class is cut into fold_count nearly equal blocks, so fold sizes per
  // class differ by at most one.
  const std::size_t clients = pop.clients.size();
  const std::size_t others = pop.non_clients.size();
  if (clients < fold_count || others < fold_count) {
    throw Error(ErrorCode::InsufficientPopulation,
                "population of " + std::to_string(clients) + " clients and " + std::to_string(others) +
                    " non-clients cannot fill " + std::to_string(fold_count) + " folds with both classes");
  }
  auto block = [fold_count](const std::vector<NodeIndex>& v, std::size_t i) {
    return std::pair{v.begin() + static_cast<std::ptrdiff_t>(i * v.size() / fold_count),
                     v.begin() + static_cast<std::ptrdiff_t>((i + 1) * v.size() / fold_count)};
  };
  FoldSpec spec;
  spec.folds.resize(fold_count);
  for (std::size_t i = 0; i < fold_count; ++i) {
    auto [cb, ce] = block(pop.clients, i);
    auto [ob, oe] = block(pop.non_clients, i);
    spec.folds[i].assign(cb, ce);
    spec.folds[i].insert(spec.folds[i].end(), ob, oe);
    std::sort(spec.folds[i].begin(), spec.folds[i].end());
  }
  return spec;
}

ScoringAlgorithm make_algorithm(const std::string& name, const AlgorithmSettings& settings) {
  if (name == "nora-d" || name == "nora-t") {
    const NoraVariant variant = name == "nora-d" ? NoraVariant::D : NoraVariant::T;
    const FlowOptions options = settings.nora;
    return {name, [variant, options](const EcosystemGraph& g, NodeIndex root) {
              return nora_score(g, root, variant, options).scores;
            }};
  }
  if (name == "rpr") {
    const RootedPageRankConfig config = settings.rooted_pagerank;
    return {name, [config](const EcosystemGraph& g, NodeIndex root) {
              return rooted_pagerank(g, root, config).scores;
            }};
  }
  if (name == "propflow") {
    const PropFlowConfig config = settings.propflow;
    return {name, [config](const EcosystemGraph& g, NodeIndex root) { return propflow(g, root, config); }};
  }
  throw Error(ErrorCode::InvalidConfig, "unknown algorithm '" + name + "'");
}

std::vector<ScoringAlgorithm> standard_algorithms(const AlgorithmSettings& settings) {
  return {make_algorithm("rpr", settings), make_algorithm("propflow", settings),
          make_algorithm("nora-d", settings), make_algorithm("nora-t", settings)};
}

LabeledRanking rank_candidates(const EcosystemGraph& g, std::span<const double> scores,
                               std::span<const NodeIndex> candidates, std::span<const NodeIndex> positives) {
  std::vector<RankedEntry> entries;
  entries.reserve(candidates.size());
  for (NodeIndex n : candidates) {
    const bool positive = std::find(positives.begin(), positives.end(), n) != positives.end();
    entries.push_back({g.id(n), scores[n], positive ? Label::Positive : Label::Negative});
  }
  return LabeledRanking(std::move(entries));
}

EvaluationReport run_evaluation(EcosystemGraph& g, const std::vector<ScoringAlgorithm>& algorithms,
                                const EvaluationOptions& options) {
  const FoldSpec folds = sample_folds(g, options.fold_count, options.seed);
  return run_evaluation(g, algorithms, folds, options);
}

EvaluationReport run_evaluation(EcosystemGraph& g, const std::vector<ScoringAlgorithm>& algorithms,
                                const FoldSpec& folds, const EvaluationOptions& options) {
  if (algorithms.empty()) throw Error(ErrorCode::InvalidConfig, "no algorithms to evaluate");
  if (folds.folds.empty()) throw Error(ErrorCode::InvalidConfig, "no folds to evaluate");

  const std::size_t fold_count = folds.fold_count();
  std::vector<std::vector<NodeIndex>> extras(fold_count);
  if (options.scope == CandidateScope::FoldAndNonClients) {
    const Population pop = evaluation_population(g);
    for (std::size_t i = 0; i < fold_count; ++i) {
      std::vector<NodeIndex> fold = folds.folds[i];
      std::sort(fold.begin(), fold.end());
      std::set_difference(pop.non_clients.begin(), pop.non_clients.end(), fold.begin(), fold.end(),
                          std::back_inserter(extras[i]));
    }
  }

  // results[fold][algorithm]
  std::vector<std::vector<MetricRow>> results(fold_count);
  const std::size_t workers = std::clamp<std::size_t>(options.threads, 1, fold_count);
  if (workers == 1) {
    for (std::size_t i = 0; i < fold_count; ++i) {
      results[i] = evaluate_fold(g, algorithms, folds.folds[i], extras[i]);
    }
  } else {
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> threads;
    for (std::size_t w = 0; w < workers; ++w) {
      threads.emplace_back([&, w] {
        try {
          EcosystemGraph copy = g;
          for (std::size_t i = w; i < fold_count; i += workers) {
            results[i] = evaluate_fold(copy, algorithms, folds.folds[i], extras[i]);
          }
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& t : threads) t.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  EvaluationReport report;
  report.fold_count = fold_count;
  for (std::size_t a = 0; a < algorithms.size(); ++a) {
    AlgorithmReport row;
    row.name = algorithms[a].name;
    for (std::size_t i = 0; i < fold_count; ++i) row.folds.push_back(results[i][a]);
    for (std::size_t m = 0; m < kMetricCount; ++m) {
      double sum = 0.0;
      for (const MetricRow& f : row.folds) sum += f.values[m];
      row.average.values[m] = sum / static_cast<double>(fold_count);
    }
    report.algorithms.push_back(std::move(row));
  }
  return report;
}

void write_summary_csv(std::ostream& out, const EvaluationReport& report) {
  out << "algorithm";
  for (Metric m : kAllMetrics) out << ',' << metric_name(m);
  out << '\n';
  for (const AlgorithmReport& a : report.algorithms) out << a.name << format_row(a.average) << '\n';
}

void write_fold_csv(std::ostream& out, const EvaluationReport& report) {
  out << "algorithm,fold";
  for (Metric m : kAllMetrics) out << ',' << metric_name(m);
  out << '\n';
  for (const AlgorithmReport& a : report.algorithms) {
    for (std::size_t i = 0; i < a.folds.size(); ++i) out << a.name << ',' << i << format_row(a.folds[i]) << '\n';
  }
}

}  // namespace clientnet
