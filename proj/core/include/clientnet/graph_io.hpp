#pragma once

// Tab-separated record files for nodes, edges and whole-graph snapshots.
//
//   nodes:  id  kind  name  [description  [key=value ...]]
//   edges:  id  source  target  category  role  tense  b2b_type  b2b_state  [cost  [weight]]
//
// Empty or "-" label fields are absent. Lines starting with '#' and blank
// lines are ignored. Free-text fields escape \t, \n, \r and \\.

#include <filesystem>
#include <iosfwd>
#include <string_view>

#include "clientnet/graph.hpp"

namespace clientnet {

struct LoadOptions {
  bool directed = false;
};

void read_nodes(std::istream& in, std::string_view source_name, GraphBuilder& builder);
void read_edges(std::istream& in, std::string_view source_name, GraphBuilder& builder);

// Throws ParseError (with line number), Io, and every GraphBuilder::build error.
EcosystemGraph load_graph(const std::filesystem::path& nodes_path,
                          const std::filesystem::path& edges_path, std::string_view root_id,
                          LoadOptions options = {});

void write_nodes(std::ostream& out, const EcosystemGraph& g);
void write_edges(std::ostream& out, const EcosystemGraph& g);
void save_graph(const std::filesystem::path& nodes_path, const std::filesystem::path& edges_path,
                const EcosystemGraph& g);

// Single-file form carrying root and directedness alongside the records.
void write_snapshot(std::ostream& out, const EcosystemGraph& g);
EcosystemGraph read_snapshot(std::istream& in, std::string_view source_name);
void save_snapshot(const std::filesystem::path& path, const EcosystemGraph& g);
EcosystemGraph load_snapshot(const std::filesystem::path& path);

}  // namespace clientnet
