#include "clientnet/metrics.hpp"

#include <algorithm>

#include "clientnet/error.hpp"

namespace clientnet {

LabeledRanking::LabeledRanking(std::vector<RankedEntry> entries) : entries_(std::move(entries)) {
  std::sort(entries_.begin(), entries_.end(), [](const RankedEntry& a, const RankedEntry& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.id < b.id;
  });
  positives_ = static_cast<std::size_t>(std::count_if(
      entries_.begin(), entries_.end(), [](const RankedEntry& e) { return e.label == Label::Positive; }));
}

double precision_at_k(const LabeledRanking& ranking, std::size_t k) {
  if (k == 0) throw Error(ErrorCode::InvalidConfig, "precision@k needs k >= 1");
  if (ranking.size() == 0) throw Error(ErrorCode::EmptyRanking, "precision@k of an empty ranking");
  const std::size_t cut = std::min(k, ranking.size());
  const auto top = ranking.entries().first(cut);
  const auto hits = std::count_if(top.begin(), top.end(),
                                  [](const RankedEntry& e) { return e.label == Label::Positive; });
  return static_cast<double>(hits) / static_cast<double>(cut);
}

double auroc(const LabeledRanking& ranking) {
  if (ranking.positives() == 0 || ranking.negatives() == 0) {
    throw Error(ErrorCode::DegenerateLabels, "AUROC needs at least one positive and one negative");
  }
  // Mann-Whitney U over groups of equal score, walking from the lowest score.
  const auto entries = ranking.entries();
  double concordant = 0.0;
  double negatives_below = 0.0;
  std::size_t end = entries.size();
  while (end > 0) {
    std::size_t begin = end - 1;
    while (begin > 0 && entries[begin - 1].score == entries[end - 1].score) --begin;
    double pos = 0.0, neg = 0.0;
    for (std::size_t i = begin; i < end; ++i) {
      (entries[i].label == Label::Positive ? pos : neg) += 1.0;
    }
    concordant += pos * (negatives_below + 0.5 * neg);
    negatives_below += neg;
    end = begin;
  }
  return concordant / (static_cast<double>(ranking.positives()) * static_cast<double>(ranking.negatives()));
}

double aupr(const LabeledRanking& ranking) {
  if (ranking.positives() == 0) throw Error(ErrorCode::DegenerateLabels, "AUPR needs at least one positive");
  double sum = 0.0;
  std::size_t hits = 0;
  const auto entries = ranking.entries();
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (entries[i].label != Label::Positive) continue;
    ++hits;
    sum += static_cast<double>(hits) / static_cast<double>(i + 1);
  }
  return sum / static_cast<double>(ranking.positives());
}

double tpr_p(const LabeledRanking& ranking) {
  if (ranking.positives() == 0) throw Error(ErrorCode::DegenerateLabels, "TPR|P| needs at least one positive");
  return precision_at_k(ranking, ranking.positives());
}

std::string_view metric_name(Metric m) {
  switch (m) {
    case Metric::P10: return "P@10";
    case Metric::P50: return "P@50";
    case Metric::P100: return "P@100";
    case Metric::P1000: return "P@1000";
    case Metric::TprP: return "TPR|P|";
    case Metric::Auroc: return "AUROC";
    case Metric::Aupr: return "AUPR";
  }
  return "?";
}

MetricRow compute_metrics(const LabeledRanking& ranking) {
  MetricRow row;
  row[Metric::P10] = precision_at_k(ranking, 10);
  row[Metric::P50] = precision_at_k(ranking, 50);
  row[Metric::P100] = precision_at_k(ranking, 100);
  row[Metric::P1000] = precision_at_k(ranking, 1000);
  row[Metric::TprP] = tpr_p(ranking);
  row[Metric::Auroc] = auroc(ranking);
  row[Metric::Aupr] = aupr(ranking);
  return row;
}

}  // namespace clientnet
