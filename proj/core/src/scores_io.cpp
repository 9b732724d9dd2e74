#include "clientnet/scores_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>

#include "clientnet/error.hpp"
#include "text.hpp"

namespace clientnet {

void write_scores(std::ostream& out, const EcosystemGraph& g, std::span<const double> scores,
                  std::string_view algorithm, double parameter) {
  if (scores.size() != g.node_count()) throw Error(ErrorCode::InvalidConfig, "score vector size mismatch");
  const std::string param = text::format_double(parameter);
  out << "# node_id\talgorithm\tparameter\tscore\n";
  for (NodeIndex n = 0; n < g.node_count(); ++n) {
    out << text::escape(g.id(n)) << '\t' << algorithm << '\t' << param << '\t'
        << text::format_double(scores[n]) << '\n';
  }
}

void save_scores(const std::filesystem::path& path, const EcosystemGraph& g, std::span<const double> scores,
                 std::string_view algorithm, double parameter) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::Io, "cannot write '" + path.string() + "'");
  write_scores(out, g, scores, algorithm, parameter);
}

ScoreTable read_scores(std::istream& in, const EcosystemGraph& g, std::string_view source_name) {
  const std::string src(source_name);
  ScoreTable table;
  table.scores.assign(g.node_count(), 0.0);
  bool first = true;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string_view view = text::chomp(line);
    if (text::is_skippable(view)) continue;
    const auto fields = text::split_tabs(view);
    if (fields.size() != 4) throw ParseError(src, lineno, "expected node_id, algorithm, parameter, score");
    auto id = text::unescape(fields[0]);
    auto parameter = text::parse_double(fields[2]);
    auto score = text::parse_double(fields[3]);
    if (!id || !parameter || !score) throw ParseError(src, lineno, "malformed score record");
    if (first) {
      table.algorithm = std::string(fields[1]);
      table.parameter = *parameter;
      first = false;
    } else if (fields[1] != table.algorithm) {
      throw ParseError(src, lineno, "mixed algorithms in one score file");
    }
    auto node = g.find_node(*id);
    if (!node) throw Error(ErrorCode::UnknownId, src + ":" + std::to_string(lineno) + ": unknown node '" + *id + "'");
    table.scores[*node] = *score;
  }
  return table;
}

ScoreTable load_scores(const std::filesystem::path& path, const EcosystemGraph& g) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open '" + path.string() + "'");
  return read_scores(in, g, path.string());
}

}  // namespace clientnet
