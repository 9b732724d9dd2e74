#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace clientnet {

using NodeIndex = std::uint32_t;
using EdgeIndex = std::uint32_t;

inline constexpr NodeIndex kNoNode = std::numeric_limits<NodeIndex>::max();

enum class NodeKind : std::uint8_t { Company, Person };

struct Node {
  std::string id;
  NodeKind kind = NodeKind::Company;
  std::string name;
  std::string description;
  std::map<std::string, std::string> attrs;

  friend bool operator==(const Node&, const Node&) = default;
};

enum class EdgeCategory : std::uint8_t { JobRole, B2B, Client };
enum class JobRole : std::uint8_t { BoardMember, Executive };
enum class Tense : std::uint8_t { Current, Former };

struct B2bType {
  enum class Kind : std::uint8_t { Sponsor, Subsidiary, Investor, Other };
  Kind kind = Kind::Other;
  std::string other;  // raw label when kind == Other

  friend bool operator==(const B2bType&, const B2bType&) = default;
};

struct B2bState {
  enum class Kind : std::uint8_t { Pending, Cancelled, Prior, Active, Other };
  Kind kind = Kind::Other;
  std::string other;

  friend bool operator==(const B2bState&, const B2bState&) = default;
};

struct EdgeLabel {
  EdgeCategory category = EdgeCategory::B2B;
  std::optional<JobRole> role;        // JobRole only
  std::optional<Tense> tense;         // JobRole only
  std::optional<B2bType> b2b_type;    // B2B only
  std::optional<B2bState> b2b_state;  // B2B only

  static EdgeLabel job_role(JobRole role, Tense tense);
  static EdgeLabel b2b(B2bType type, std::optional<B2bState> state = std::nullopt);
  static EdgeLabel client();

  // Former job roles and prior/cancelled B2B relationships.
  bool is_past() const;

  friend bool operator==(const EdgeLabel&, const EdgeLabel&) = default;
};

struct Edge {
  std::string id;
  NodeIndex source = kNoNode;
  NodeIndex target = kNoNode;
  EdgeLabel label;
  double cost = 1.0;
  double weight = 1.0;

  bool is_self_loop() const { return source == target; }
  NodeIndex other(NodeIndex n) const { return n == source ? target : source; }

  friend bool operator==(const Edge&, const Edge&) = default;
};

// One entry of a node's adjacency list. Undirected edges are traversable
// from both endpoints; a directed edge is outgoing only at its source.
struct Incidence {
  NodeIndex neighbor;
  EdgeIndex edge : 31;
  EdgeIndex outgoing : 1;
};
static_assert(sizeof(Incidence) == 8);

// Edge indices must fit Incidence::edge.
inline constexpr std::size_t kMaxEdges = (std::size_t{1} << 31) - 1;

struct ClientPartition {
  std::vector<NodeIndex> clients;
  std::vector<NodeIndex> non_clients;
  std::vector<NodeIndex> root_only_clients;
};

// Heterogeneous multigraph of companies and persons with a designated root
// company. Node indices follow ascending NodeId order, and every adjacency
// list is kept sorted by (neighbor, edge), so iteration order is the NodeId
// tie-break order used throughout the algorithms.
class EcosystemGraph {
 public:
  EcosystemGraph() = default;

  std::size_t node_count() const { return nodes_.size(); }
  const Node& node(NodeIndex n) const { return nodes_[n]; }
  std::span<const Node> nodes() const { return nodes_; }
  std::optional<NodeIndex> find_node(std::string_view id) const;
  // Throws NodeNotFound.
  NodeIndex index_of(std::string_view id) const;
  const std::string& id(NodeIndex n) const { return nodes_[n].id; }
  bool is_company(NodeIndex n) const { return nodes_[n].kind == NodeKind::Company; }

  NodeIndex root() const { return root_; }
  bool directed() const { return directed_; }

  // Slots include removed edges; use is_live() or for_each_edge().
  std::size_t edge_slot_count() const { return edges_.size(); }
  std::size_t edge_count() const { return live_edge_count_; }
  const Edge& edge(EdgeIndex e) const { return edges_[e]; }
  double edge_weight(EdgeIndex e) const { return weights_[e]; }
  bool is_live(EdgeIndex e) const { return live_[e] != 0; }
  std::optional<EdgeIndex> find_edge(std::string_view id) const;

  template <class F>
  void for_each_edge(F&& f) const {
    for (EdgeIndex e = 0; e < edges_.size(); ++e) {
      if (live_[e]) f(e, edges_[e]);
    }
  }

  std::span<const Incidence> incidences(NodeIndex n) const { return adjacency_[n]; }

  // Live edges sorted by edge id; equality of two snapshots means equal
  // edge multisets.
  std::vector<Edge> edge_multiset() const;

  bool uniform_costs() const;

  bool has_client_edge(NodeIndex n) const;
  // Removes one Client edge between root and `n` (lowest edge index first)
  // and returns it for later restoration. Throws NoClientEdge.
  Edge remove_client_link(NodeIndex n);
  // Inserts (or revives) a Client edge between root and `n`. Re-adding an
  // identical live edge is a no-op. Throws InvalidClientEdge, DuplicateId.
  void add_client_link(NodeIndex n, const Edge& edge);

  ClientPartition client_partition() const;

 private:
  friend class GraphBuilder;

  void attach(EdgeIndex e);
  void detach(EdgeIndex e);

  std::vector<Node> nodes_;
  std::vector<Edge> edges_;
  std::vector<double> weights_;  // edges_[e].weight, packed for traversals
  std::vector<std::uint8_t> live_;
  std::map<double, std::size_t> live_costs_;  // cost -> live edge count
  std::vector<std::vector<Incidence>> adjacency_;
  // edges_[0, sorted_edge_count_) are sorted by id; later slots were
  // appended through add_client_link and are indexed here.
  std::size_t sorted_edge_count_ = 0;
  std::map<std::string, EdgeIndex, std::less<>> appended_edges_;
  std::size_t live_edge_count_ = 0;
  NodeIndex root_ = kNoNode;
  bool directed_ = false;
};

// Edge as read from a file: endpoints are node ids, not yet resolved.
struct EdgeRecord {
  std::string id;
  std::string source;
  std::string target;
  EdgeLabel label;
  double cost = 1.0;
  double weight = 1.0;
};

class GraphBuilder {
 public:
  GraphBuilder& reserve(std::size_t nodes, std::size_t edges);
  GraphBuilder& add_node(Node node);
  GraphBuilder& add_edge(EdgeRecord edge);
  GraphBuilder& set_root(std::string id);
  GraphBuilder& set_directed(bool directed);

  // Validates every graph invariant. Throws MissingRoot, RootNotCompany,
  // DuplicateId, DanglingEdge, InvalidClientEdge, InvalidJobRoleEdge or
  // InvalidLabel (also for empty ids and non-positive cost or weight).
  EcosystemGraph build() &&;

 private:
  std::vector<Node> nodes_;
  std::vector<EdgeRecord> edges_;
  std::string root_;
  bool directed_ = false;
};

std::string_view to_string(NodeKind kind);
std::string_view to_string(EdgeCategory category);
std::string_view to_string(JobRole role);
std::string_view to_string(Tense tense);
std::string to_string(const B2bType& type);
std::string to_string(const B2bState& state);

std::optional<NodeKind> parse_node_kind(std::string_view text);
std::optional<EdgeCategory> parse_edge_category(std::string_view text);
std::optional<JobRole> parse_job_role(std::string_view text);
std::optional<Tense> parse_tense(std::string_view text);
B2bType parse_b2b_type(std::string_view text);
B2bState parse_b2b_state(std::string_view text);

}  // namespace clientnet
