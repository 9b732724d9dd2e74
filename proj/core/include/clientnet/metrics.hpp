#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace clientnet {

enum class Label : std::uint8_t { Negative, Positive };

struct RankedEntry {
  std::string id;
  double score = 0.0;
  Label label = Label::Negative;
};

// Entries sorted by score descending, ties broken by ascending id.
class LabeledRanking {
 public:
  LabeledRanking() = default;
  explicit LabeledRanking(std::vector<RankedEntry> entries);

  std::span<const RankedEntry> entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  std::size_t positives() const { return positives_; }
  std::size_t negatives() const { return entries_.size() - positives_; }

 private:
  std::vector<RankedEntry> entries_;
  std::size_t positives_ = 0;
};

// Fraction of positives among the first min(k, size) entries.
// Throws EmptyRanking, InvalidConfig (k == 0).
double precision_at_k(const LabeledRanking& ranking, std::size_t k);

// Probability that a random positive outscores a random negative, ties
// counting one half. Throws DegenerateLabels without both classes.
double auroc(const LabeledRanking& ranking);

// Average precision: mean over positives of the precision at that positive's
// position in the ranking. Throws DegenerateLabels without positives.
double aupr(const LabeledRanking& ranking);

// Precision at a cut equal to the number of positives.
double tpr_p(const LabeledRanking& ranking);

enum class Metric { P10, P50, P100, P1000, TprP, Auroc, Aupr };
inline constexpr std::size_t kMetricCount = 7;
inline constexpr std::array<Metric, kMetricCount> kAllMetrics = {
    Metric::P10, Metric::P50, Metric::P100, Metric::P1000, Metric::TprP, Metric::Auroc, Metric::Aupr};

std::string_view metric_name(Metric m);

struct MetricRow {
  std::array<double, kMetricCount> values{};

  double& operator[](Metric m) { return values[static_cast<std::size_t>(m)]; }
  double operator[](Metric m) const { return values[static_cast<std::size_t>(m)]; }

  friend bool operator==(const MetricRow&, const MetricRow&) = default;
};

MetricRow compute_metrics(const LabeledRanking& ranking);

}  // namespace clientnet
