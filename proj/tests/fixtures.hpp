#pragma once

#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "clientnet/graph.hpp"

namespace fixture {

struct Link {
  std::string source;
  std::string target;
  double cost = 1.0;
  double weight = 1.0;
};

// Companies named by `ids`; every link is a B2B edge E<k> in list order.
inline clientnet::EcosystemGraph companies(std::initializer_list<std::string> ids, std::vector<Link> links,
                                           const std::string& root, bool directed = false) {
  clientnet::GraphBuilder b;
  for (const std::string& id : ids) {
    clientnet::Node n;
    n.id = id;
    n.name = id;
    b.add_node(n);
  }
  for (std::size_t i = 0; i < links.size(); ++i) {
    b.add_edge({"E" + std::to_string(10 + i), links[i].source, links[i].target,
                clientnet::EdgeLabel::b2b({clientnet::B2bType::Kind::Sponsor, {}}), links[i].cost,
                links[i].weight});
  }
  b.set_root(root);
  b.set_directed(directed);
  return std::move(b).build();
}

inline clientnet::Node company(std::string id, std::string name = {}) {
  clientnet::Node n;
  n.id = std::move(id);
  n.name = name.empty() ? n.id : std::move(name);
  return n;
}

inline clientnet::Node person(std::string id) {
  clientnet::Node n;
  n.id = std::move(id);
  n.kind = clientnet::NodeKind::Person;
  n.name = n.id;
  return n;
}

inline clientnet::EdgeRecord client(std::string id, std::string root, std::string company) {
  return {std::move(id), std::move(root), std::move(company), clientnet::EdgeLabel::client(), 1.0, 1.0};
}

inline clientnet::EdgeRecord role(std::string id, std::string person, std::string company,
                                  clientnet::Tense tense = clientnet::Tense::Current,
                                  clientnet::JobRole r = clientnet::JobRole::Executive) {
  return {std::move(id), std::move(person), std::move(company), clientnet::EdgeLabel::job_role(r, tense), 1.0, 1.0};
}

inline clientnet::EdgeRecord b2b(std::string id, std::string a, std::string b) {
  return {std::move(id), std::move(a), std::move(b),
          clientnet::EdgeLabel::b2b({clientnet::B2bType::Kind::Investor, {}}, clientnet::B2bState{clientnet::B2bState::Kind::Active, {}}),
          1.0, 1.0};
}

inline std::vector<clientnet::NodeIndex> indices(const clientnet::EcosystemGraph& g,
                                                 std::initializer_list<std::string> ids) {
  std::vector<clientnet::NodeIndex> out;
  for (const std::string& id : ids) out.push_back(g.index_of(id));
  return out;
}

}  // namespace fixture
