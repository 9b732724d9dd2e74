#include "clientnet/graph_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include "clientnet/error.hpp"
#include "text.hpp"

namespace clientnet {

namespace {

constexpr std::string_view kSnapshotMagic = "# clientnet snapshot v1";

bool absent(std::string_view field) { return field.empty() || field == "-"; }

std::string text_field(std::string_view field, std::string_view source, std::size_t line) {
  auto value = text::unescape(field);
  if (!value) throw ParseError(std::string(source), line, "bad escape sequence");
  return *value;
}

Node parse_node(std::string_view line, std::string_view source, std::size_t lineno) {
  const auto fields = text::split_tabs(line);
  if (fields.size() < 3) throw ParseError(std::string(source), lineno, "expected id, kind and name");
  Node node;
  node.id = text_field(fields[0], source, lineno);
  if (node.id.empty()) throw ParseError(std::string(source), lineno, "empty node id");
  auto kind = parse_node_kind(fields[1]);
  if (!kind) {
    throw ParseError(std::string(source), lineno, "unknown node kind '" + std::string(fields[1]) + "'");
  }
  node.kind = *kind;
  node.name = text_field(fields[2], source, lineno);
  if (fields.size() > 3) node.description = text_field(fields[3], source, lineno);
  for (std::size_t i = 4; i < fields.size(); ++i) {
    const std::size_t eq = fields[i].find('=');
    if (eq == 0 || eq == std::string_view::npos) {
      throw ParseError(std::string(source), lineno, "attribute must be key=value");
    }
    node.attrs[text_field(fields[i].substr(0, eq), source, lineno)] =
        text_field(fields[i].substr(eq + 1), source, lineno);
  }
  return node;
}

EdgeRecord parse_edge(std::string_view line, std::string_view source, std::size_t lineno) {
  const auto fields = text::split_tabs(line);
  const std::string src(source);
  if (fields.size() < 8 || fields.size() > 10) {
    throw ParseError(src, lineno, "expected 8 to 10 fields, got " + std::to_string(fields.size()));
  }
  EdgeRecord rec;
  rec.id = text_field(fields[0], source, lineno);
  rec.source = text_field(fields[1], source, lineno);
  rec.target = text_field(fields[2], source, lineno);
  if (rec.id.empty() || rec.source.empty() || rec.target.empty()) {
    throw ParseError(src, lineno, "edge id and endpoints must be non-empty");
  }

  if (auto category = parse_edge_category(fields[3])) {
    rec.label.category = *category;
  } else if (!absent(fields[3])) {
    // Unrecognised relationship types load as B2B edges of that type.
    rec.label.category = EdgeCategory::B2B;
    rec.label.b2b_type = B2bType{B2bType::Kind::Other, text_field(fields[3], source, lineno)};
  } else {
    throw ParseError(src, lineno, "missing edge category");
  }

  if (!absent(fields[4])) {
    rec.label.role = parse_job_role(fields[4]);
    if (!rec.label.role) throw ParseError(src, lineno, "unknown role '" + std::string(fields[4]) + "'");
  }
  if (!absent(fields[5])) {
    rec.label.tense = parse_tense(fields[5]);
    if (!rec.label.tense) throw ParseError(src, lineno, "unknown tense '" + std::string(fields[5]) + "'");
  }
  if (!absent(fields[6])) {
    if (rec.label.b2b_type) throw ParseError(src, lineno, "B2B type given twice");
    rec.label.b2b_type = parse_b2b_type(text_field(fields[6], source, lineno));
  }
  if (!absent(fields[7])) rec.label.b2b_state = parse_b2b_state(text_field(fields[7], source, lineno));

  if (fields.size() > 8 && !absent(fields[8])) {
    auto cost = text::parse_double(fields[8]);
    if (!cost || !(*cost > 0.0)) throw ParseError(src, lineno, "cost must be a positive number");
    rec.cost = *cost;
  }
  if (fields.size() > 9 && !absent(fields[9])) {
    auto weight = text::parse_double(fields[9]);
    if (!weight || !(*weight > 0.0)) throw ParseError(src, lineno, "weight must be a positive number");
    rec.weight = *weight;
  }
  return rec;
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open '" + path.string() + "'");
  return in;
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::Io, "cannot write '" + path.string() + "'");
  return out;
}

void write_node(std::ostream& out, const Node& n) {
  out << text::escape(n.id) << '\t' << to_string(n.kind) << '\t' << text::escape(n.name);
  if (!n.description.empty() || !n.attrs.empty()) out << '\t' << text::escape(n.description);
  for (const auto& [key, value] : n.attrs) out << '\t' << text::escape(key) << '=' << text::escape(value);
  out << '\n';
}

void write_edge(std::ostream& out, const EcosystemGraph& g, const Edge& e) {
  const EdgeLabel& l = e.label;
  out << text::escape(e.id) << '\t' << text::escape(g.id(e.source)) << '\t'
      << text::escape(g.id(e.target)) << '\t' << to_string(l.category) << '\t'
      << (l.role ? to_string(*l.role) : "-") << '\t' << (l.tense ? to_string(*l.tense) : "-") << '\t'
      << (l.b2b_type ? text::escape(to_string(*l.b2b_type)) : "-") << '\t'
      << (l.b2b_state ? text::escape(to_string(*l.b2b_state)) : "-");
  if (e.cost != 1.0 || e.weight != 1.0) {
    out << '\t' << text::format_double(e.cost) << '\t' << text::format_double(e.weight);
  }
  out << '\n';
}

}  // namespace

void read_nodes(std::istream& in, std::string_view source_name, GraphBuilder& builder) {
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string_view view = text::chomp(line);
    if (text::is_skippable(view)) continue;
    builder.add_node(parse_node(view, source_name, lineno));
  }
}

void read_edges(std::istream& in, std::string_view source_name, GraphBuilder& builder) {
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string_view view = text::chomp(line);
    if (text::is_skippable(view)) continue;
    builder.add_edge(parse_edge(view, source_name, lineno));
  }
}

EcosystemGraph load_graph(const std::filesystem::path& nodes_path,
                          const std::filesystem::path& edges_path, std::string_view root_id,
                          LoadOptions options) {
  GraphBuilder builder;
  {
    auto in = open_input(nodes_path);
    read_nodes(in, nodes_path.string(), builder);
  }
  {
    auto in = open_input(edges_path);
    read_edges(in, edges_path.string(), builder);
  }
  builder.set_root(std::string(root_id)).set_directed(options.directed);
  return std::move(builder).build();
}

void write_nodes(std::ostream& out, const EcosystemGraph& g) {
  for (const Node& n : g.nodes()) write_node(out, n);
}

void write_edges(std::ostream& out, const EcosystemGraph& g) {
  g.for_each_edge([&](EdgeIndex, const Edge& e) { write_edge(out, g, e); });
}

void save_graph(const std::filesystem::path& nodes_path, const std::filesystem::path& edges_path,
                const EcosystemGraph& g) {
  {
    auto out = open_output(nodes_path);
    write_nodes(out, g);
  }
  auto out = open_output(edges_path);
  write_edges(out, g);
}

void write_snapshot(std::ostream& out, const EcosystemGraph& g) {
  out << kSnapshotMagic << '\n';
  out << "%root\t" << text::escape(g.id(g.root())) << '\n';
  out << "%directed\t" << (g.directed() ? 1 : 0) << '\n';
  out << "%nodes\n";
  write_nodes(out, g);
  out << "%edges\n";
  write_edges(out, g);
}

EcosystemGraph read_snapshot(std::istream& in, std::string_view source_name) {
  const std::string src(source_name);
  std::string line;
  std::size_t lineno = 0;
  if (!std::getline(in, line) || text::chomp(line) != kSnapshotMagic) {
    throw ParseError(src, 1, "not a clientnet snapshot");
  }
  ++lineno;

  GraphBuilder builder;
  enum class Section { Header, Nodes, Edges } section = Section::Header;
  bool have_root = false;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string_view view = text::chomp(line);
    if (!view.empty() && view.front() == '%') {
      const auto fields = text::split_tabs(view);
      if (fields[0] == "%root" && fields.size() == 2) {
        builder.set_root(text_field(fields[1], source_name, lineno));
        have_root = true;
      } else if (fields[0] == "%directed" && fields.size() == 2) {
        builder.set_directed(fields[1] == "1");
      } else if (fields[0] == "%nodes") {
        section = Section::Nodes;
      } else if (fields[0] == "%edges") {
        section = Section::Edges;
      } else {
        throw ParseError(src, lineno, "unknown directive '" + std::string(fields[0]) + "'");
      }
      continue;
    }
    if (text::is_skippable(view)) continue;
    switch (section) {
      case Section::Header: throw ParseError(src, lineno, "record before %nodes");
      case Section::Nodes: builder.add_node(parse_node(view, source_name, lineno)); break;
      case Section::Edges: builder.add_edge(parse_edge(view, source_name, lineno)); break;
    }
  }
  if (!have_root) throw Error(ErrorCode::MissingRoot, src + ": snapshot names no root");
  return std::move(builder).build();
}

void save_snapshot(const std::filesystem::path& path, const EcosystemGraph& g) {
  auto out = open_output(path);
  write_snapshot(out, g);
}

EcosystemGraph load_snapshot(const std::filesystem::path& path) {
  auto in = open_input(path);
  return read_snapshot(in, path.string());
}

}  // namespace clientnet
