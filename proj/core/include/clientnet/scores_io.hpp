#pragma once

// Score export: one tab-separated record per node,
//   node_id  algorithm  parameter  score
// where parameter is gamma for NORA, alpha for rooted PageRank and the depth
// for PropFlow. Scores are written with round-trip precision.

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "clientnet/graph.hpp"

namespace clientnet {

struct ScoreTable {
  std::string algorithm;
  double parameter = 0.0;
  std::vector<double> scores;  // by NodeIndex; nodes without a record score 0
};

void write_scores(std::ostream& out, const EcosystemGraph& g, std::span<const double> scores,
                  std::string_view algorithm, double parameter);
void save_scores(const std::filesystem::path& path, const EcosystemGraph& g, std::span<const double> scores,
                 std::string_view algorithm, double parameter);

// Throws ParseError, UnknownId (record for a node not in `g`).
ScoreTable read_scores(std::istream& in, const EcosystemGraph& g, std::string_view source_name);
ScoreTable load_scores(const std::filesystem::path& path, const EcosystemGraph& g);

}  // namespace clientnet
