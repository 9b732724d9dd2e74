#include "clientnet/graph.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

#include "clientnet/error.hpp"

namespace clientnet {

namespace {

bool incidence_less(const Incidence& a, const Incidence& b) {
  return std::tuple(a.neighbor, a.edge, a.outgoing) < std::tuple(b.neighbor, b.edge, b.outgoing);
}

void insert_sorted(std::vector<Incidence>& list, Incidence inc) {
  list.insert(std::upper_bound(list.begin(), list.end(), inc, incidence_less), inc);
}

void erase_edge(std::vector<Incidence>& list, EdgeIndex e) {
  std::erase_if(list, [e](const Incidence& inc) { return inc.edge == e; });
}

bool has_state_fields(const EdgeLabel& label) {
  return label.role || label.tense || label.b2b_type || label.b2b_state;
}

}  // namespace

EdgeLabel EdgeLabel::job_role(JobRole role, Tense tense) {
  EdgeLabel label;
  label.category = EdgeCategory::JobRole;
  label.role = role;
  label.tense = tense;
  return label;
}

EdgeLabel EdgeLabel::b2b(B2bType type, std::optional<B2bState> state) {
  EdgeLabel label;
  label.category = EdgeCategory::B2B;
  label.b2b_type = std::move(type);
  label.b2b_state = std::move(state);
  return label;
}

EdgeLabel EdgeLabel::client() {
  EdgeLabel label;
  label.category = EdgeCategory::Client;
  return label;
}

bool EdgeLabel::is_past() const {
  if (tense && *tense == Tense::Former) return true;
  if (b2b_state) {
    return b2b_state->kind == B2bState::Kind::Prior || b2b_state->kind == B2bState::Kind::Cancelled;
  }
  return false;
}

// --- EcosystemGraph ---------------------------------------------------------

std::optional<NodeIndex> EcosystemGraph::find_node(std::string_view id) const {
  auto it = std::lower_bound(nodes_.begin(), nodes_.end(), id,
                             [](const Node& n, std::string_view key) { return n.id < key; });
  if (it == nodes_.end() || it->id != id) return std::nullopt;
  return static_cast<NodeIndex>(it - nodes_.begin());
}

NodeIndex EcosystemGraph::index_of(std::string_view id) const {
  if (auto n = find_node(id)) return *n;
  throw Error(ErrorCode::NodeNotFound, "no node with id '" + std::string(id) + "'");
}

std::optional<EdgeIndex> EcosystemGraph::find_edge(std::string_view id) const {
  auto end = edges_.begin() + static_cast<std::ptrdiff_t>(sorted_edge_count_);
  auto it = std::lower_bound(edges_.begin(), end, id,
                             [](const Edge& e, std::string_view key) { return e.id < key; });
  if (it != end && it->id == id) return static_cast<EdgeIndex>(it - edges_.begin());
  if (auto m = appended_edges_.find(id); m != appended_edges_.end()) return m->second;
  return std::nullopt;
}

std::vector<Edge> EcosystemGraph::edge_multiset() const {
  std::vector<Edge> out;
  out.reserve(live_edge_count_);
  for_each_edge([&](EdgeIndex, const Edge& e) { out.push_back(e); });
  std::sort(out.begin(), out.end(), [](const Edge& a, const Edge& b) { return a.id < b.id; });
  return out;
}

bool EcosystemGraph::uniform_costs() const { return live_costs_.size() <= 1; }

void EcosystemGraph::attach(EdgeIndex e) {
  const Edge& edge = edges_[e];
  ++live_costs_[edge.cost];
  insert_sorted(adjacency_[edge.source], {edge.target, e, true});
  if (!edge.is_self_loop()) {
    insert_sorted(adjacency_[edge.target], {edge.source, e, !directed_});
  }
}

void EcosystemGraph::detach(EdgeIndex e) {
  const Edge& edge = edges_[e];
  if (auto it = live_costs_.find(edge.cost); it != live_costs_.end() && --it->second == 0) live_costs_.erase(it);
  erase_edge(adjacency_[edge.source], e);
  if (!edge.is_self_loop()) erase_edge(adjacency_[edge.target], e);
}

bool EcosystemGraph::has_client_edge(NodeIndex n) const {
  if (n >= nodes_.size() || n == root_) return false;
  return std::any_of(adjacency_[n].begin(), adjacency_[n].end(), [&](const Incidence& inc) {
    return edges_[inc.edge].label.category == EdgeCategory::Client;
  });
}

Edge EcosystemGraph::remove_client_link(NodeIndex n) {
  if (n < nodes_.size() && n != root_) {
    for (const Incidence& inc : adjacency_[n]) {
      if (edges_[inc.edge].label.category != EdgeCategory::Client) continue;
      const EdgeIndex e = inc.edge;
      detach(e);
      live_[e] = 0;
      --live_edge_count_;
      return edges_[e];
    }
  }
  const std::string name = n < nodes_.size() ? nodes_[n].id : std::to_string(n);
  throw Error(ErrorCode::NoClientEdge, "no client edge between root and '" + name + "'");
}

void EcosystemGraph::add_client_link(NodeIndex n, const Edge& edge) {
  const bool endpoints_ok = n < nodes_.size() && n != root_ &&
                            ((edge.source == root_ && edge.target == n) ||
                             (edge.target == root_ && edge.source == n));
  if (edge.label.category != EdgeCategory::Client || has_state_fields(edge.label) || !endpoints_ok ||
      nodes_[n].kind != NodeKind::Company) {
    throw Error(ErrorCode::InvalidClientEdge,
                "edge '" + edge.id + "' is not a stateless client edge between root and the node");
  }
  if (!(edge.cost > 0.0) || !(edge.weight > 0.0)) {
    throw Error(ErrorCode::InvalidClientEdge, "edge '" + edge.id + "' needs positive cost and weight");
  }
  if (auto existing = find_edge(edge.id)) {
    const EdgeIndex e = *existing;
    if (live_[e]) {
      if (edges_[e] == edge) return;
      throw Error(ErrorCode::DuplicateId, "edge id '" + edge.id + "' already in use");
    }
    edges_[e] = edge;
    weights_[e] = edge.weight;
    live_[e] = 1;
    ++live_edge_count_;
    attach(e);
    return;
  }
  const auto e = static_cast<EdgeIndex>(edges_.size());
  edges_.push_back(edge);
  weights_.push_back(edge.weight);
  live_.push_back(1);
  appended_edges_.emplace(edge.id, e);
  ++live_edge_count_;
  attach(e);
}

ClientPartition EcosystemGraph::client_partition() const {
  ClientPartition part;
  for (NodeIndex n = 0; n < nodes_.size(); ++n) {
    if (n == root_ || nodes_[n].kind != NodeKind::Company) continue;
    bool client = false;
    bool only_client_edges = true;
    for (const Incidence& inc : adjacency_[n]) {
      if (edges_[inc.edge].label.category == EdgeCategory::Client) {
        client = true;
      } else {
        only_client_edges = false;
      }
    }
    if (client) {
      part.clients.push_back(n);
      if (only_client_edges) part.root_only_clients.push_back(n);
    } else {
      part.non_clients.push_back(n);
    }
  }
  return part;
}

// --- GraphBuilder -----------------------------------------------------------

GraphBuilder& GraphBuilder::reserve(std::size_t nodes, std::size_t edges) {
  nodes_.reserve(nodes);
  edges_.reserve(edges);
  return *this;
}

GraphBuilder& GraphBuilder::add_node(Node node) {
  nodes_.push_back(std::move(node));
  return *this;
}

GraphBuilder& GraphBuilder::add_edge(EdgeRecord edge) {
  edges_.push_back(std::move(edge));
  return *this;
}

GraphBuilder& GraphBuilder::set_root(std::string id) {
  root_ = std::move(id);
  return *this;
}

GraphBuilder& GraphBuilder::set_directed(bool directed) {
  directed_ = directed;
  return *this;
}

EcosystemGraph GraphBuilder::build() && {
  EcosystemGraph g;
  g.directed_ = directed_;

  for (const Node& n : nodes_) {
    if (n.id.empty()) throw Error(ErrorCode::InvalidLabel, "node with empty id");
  }
  std::sort(nodes_.begin(), nodes_.end(), [](const Node& a, const Node& b) { return a.id < b.id; });
  for (std::size_t i = 1; i < nodes_.size(); ++i) {
    if (nodes_[i].id == nodes_[i - 1].id) {
      throw Error(ErrorCode::DuplicateId, "node id '" + nodes_[i].id + "' appears more than once");
    }
  }
  if (nodes_.size() >= kNoNode) throw Error(ErrorCode::InvalidConfig, "too many nodes");
  g.nodes_ = std::move(nodes_);

  auto root = g.find_node(root_);
  if (!root) throw Error(ErrorCode::MissingRoot, "root '" + root_ + "' is not a node of the graph");
  if (g.nodes_[*root].kind != NodeKind::Company) {
    throw Error(ErrorCode::RootNotCompany, "root '" + root_ + "' is not a company");
  }
  g.root_ = *root;

  std::sort(edges_.begin(), edges_.end(),
            [](const EdgeRecord& a, const EdgeRecord& b) { return a.id < b.id; });
  g.edges_.reserve(edges_.size());
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    EdgeRecord& rec = edges_[i];
    if (rec.id.empty()) throw Error(ErrorCode::InvalidLabel, "edge with empty id");
    if (i > 0 && rec.id == edges_[i - 1].id) {
      throw Error(ErrorCode::DuplicateId, "edge id '" + rec.id + "' appears more than once");
    }
    auto src = g.find_node(rec.source);
    auto dst = g.find_node(rec.target);
    if (!src || !dst) {
      throw Error(ErrorCode::DanglingEdge, "edge '" + rec.id + "' references unknown node '" +
                                               (src ? rec.target : rec.source) + "'");
    }
    if (!(rec.cost > 0.0) || !std::isfinite(rec.cost) || !(rec.weight > 0.0) ||
        !std::isfinite(rec.weight)) {
      throw Error(ErrorCode::InvalidLabel, "edge '" + rec.id + "' needs positive finite cost and weight");
    }

    const NodeKind ks = g.nodes_[*src].kind;
    const NodeKind kd = g.nodes_[*dst].kind;
    const EdgeLabel& label = rec.label;
    switch (label.category) {
      case EdgeCategory::JobRole:
        if (label.b2b_type || label.b2b_state) {
          throw Error(ErrorCode::InvalidLabel, "job-role edge '" + rec.id + "' carries B2B fields");
        }
        if (!((ks == NodeKind::Person && kd == NodeKind::Company) ||
              (ks == NodeKind::Company && kd == NodeKind::Person))) {
          throw Error(ErrorCode::InvalidJobRoleEdge,
                      "job-role edge '" + rec.id + "' must join one person and one company");
        }
        break;
      case EdgeCategory::B2B:
        if (label.role || label.tense) {
          throw Error(ErrorCode::InvalidLabel, "B2B edge '" + rec.id + "' carries job-role fields");
        }
        break;
      case EdgeCategory::Client: {
        if (has_state_fields(label)) {
          throw Error(ErrorCode::InvalidClientEdge, "client edge '" + rec.id + "' carries state");
        }
        const bool touches_root_once = (*src == g.root_) != (*dst == g.root_);
        const NodeIndex other = *src == g.root_ ? *dst : *src;
        if (!touches_root_once || g.nodes_[other].kind != NodeKind::Company) {
          throw Error(ErrorCode::InvalidClientEdge,
                      "client edge '" + rec.id + "' must join the root and another company");
        }
        break;
      }
    }
    g.edges_.push_back(Edge{std::move(rec.id), *src, *dst, std::move(rec.label), rec.cost, rec.weight});
  }
  edges_.clear();

  if (g.edges_.size() > kMaxEdges) {
    throw Error(ErrorCode::InvalidConfig, "too many edges");
  }
  g.sorted_edge_count_ = g.edges_.size();
  g.live_.assign(g.edges_.size(), 1);
  g.live_edge_count_ = g.edges_.size();
  g.adjacency_.resize(g.nodes_.size());
  {
    std::vector<std::size_t> degree(g.nodes_.size(), 0);
    for (const Edge& edge : g.edges_) {
      ++degree[edge.source];
      if (!edge.is_self_loop()) ++degree[edge.target];
    }
    for (std::size_t n = 0; n < degree.size(); ++n) g.adjacency_[n].reserve(degree[n]);
  }
  g.weights_.reserve(g.edges_.size());
  for (EdgeIndex e = 0; e < g.edges_.size(); ++e) {
    const Edge& edge = g.edges_[e];
    g.weights_.push_back(edge.weight);
    ++g.live_costs_[edge.cost];
    g.adjacency_[edge.source].push_back({edge.target, e, true});
    if (!edge.is_self_loop()) g.adjacency_[edge.target].push_back({edge.source, e, !g.directed_});
  }
  for (auto& list : g.adjacency_) std::sort(list.begin(), list.end(), incidence_less);
  return g;
}

// --- label text forms -------------------------------------------------------

std::string_view to_string(NodeKind kind) {
  return kind == NodeKind::Company ? "company" : "person";
}

std::string_view to_string(EdgeCategory category) {
  switch (category) {
    case EdgeCategory::JobRole: return "job_role";
    case EdgeCategory::B2B: return "b2b";
    case EdgeCategory::Client: return "client";
  }
  return "b2b";
}

std::string_view to_string(JobRole role) {
  return role == JobRole::BoardMember ? "board_member" : "executive";
}

std::string_view to_string(Tense tense) { return tense == Tense::Current ? "current" : "former"; }

std::string to_string(const B2bType& type) {
  switch (type.kind) {
    case B2bType::Kind::Sponsor: return "sponsor";
    case B2bType::Kind::Subsidiary: return "subsidiary";
    case B2bType::Kind::Investor: return "investor";
    case B2bType::Kind::Other: return type.other;
  }
  return type.other;
}

std::string to_string(const B2bState& state) {
  switch (state.kind) {
    case B2bState::Kind::Pending: return "pending";
    case B2bState::Kind::Cancelled: return "cancelled";
    case B2bState::Kind::Prior: return "prior";
    case B2bState::Kind::Active: return "active";
    case B2bState::Kind::Other: return state.other;
  }
  return state.other;
}

std::optional<NodeKind> parse_node_kind(std::string_view text) {
  if (text == "company") return NodeKind::Company;
  if (text == "person") return NodeKind::Person;
  return std::nullopt;
}

std::optional<EdgeCategory> parse_edge_category(std::string_view text) {
  if (text == "job_role") return EdgeCategory::JobRole;
  if (text == "b2b") return EdgeCategory::B2B;
  if (text == "client") return EdgeCategory::Client;
  return std::nullopt;
}

std::optional<JobRole> parse_job_role(std::string_view text) {
  if (text == "board_member") return JobRole::BoardMember;
  if (text == "executive") return JobRole::Executive;
  return std::nullopt;
}

std::optional<Tense> parse_tense(std::string_view text) {
  if (text == "current") return Tense::Current;
  if (text == "former") return Tense::Former;
  return std::nullopt;
}

B2bType parse_b2b_type(std::string_view text) {
  if (text == "sponsor") return {B2bType::Kind::Sponsor, {}};
  if (text == "subsidiary") return {B2bType::Kind::Subsidiary, {}};
  if (text == "investor") return {B2bType::Kind::Investor, {}};
  return {B2bType::Kind::Other, std::string(text)};
}

B2bState parse_b2b_state(std::string_view text) {
  if (text == "pending") return {B2bState::Kind::Pending, {}};
  if (text == "cancelled") return {B2bState::Kind::Cancelled, {}};
  if (text == "prior") return {B2bState::Kind::Prior, {}};
  if (text == "active") return {B2bState::Kind::Active, {}};
  return {B2bState::Kind::Other, std::string(text)};
}

}  // namespace clientnet
