#include "clientnet/synthgen.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "clientnet/error.hpp"

namespace clientnet {

namespace {

constexpr std::array kAdjectives = {"Black", "Blue", "Silver", "Golden", "Northern", "Eastern", "Bright",
                                    "Granite", "Crimson", "Green", "Atlas", "Summit", "Harbor", "Iron",
                                    "Cedar", "Polar"};
constexpr std::array kNouns = {"Orange", "River", "Stone", "Bridge", "Peak", "Field", "Wave", "Forge",
                               "Lake", "Crest", "Oak", "Point", "Gate", "Mill", "Star", "Ridge"};
constexpr std::array kSuffixes = {"Holdings", "Capital", "Bank", "Partners", "Group", "Industries",
                                  "Investments", "Systems"};
constexpr std::array kSectors = {"banking", "asset management", "insurance", "manufacturing",
                                 "software", "logistics", "energy", "retail"};
constexpr std::array kCities = {"Dublin", "London", "New York", "Frankfurt", "Singapore", "Toronto",
                                "Zurich", "Sydney", "Paris", "Tokyo"};
constexpr std::array kFirstNames = {"Alex", "Sam", "Jordan", "Morgan", "Casey", "Robin", "Taylor",
                                    "Jamie", "Riley", "Avery", "Quinn", "Drew"};
constexpr std::array kLastNames = {"Byrne", "Walsh", "Kelly", "Murphy", "Chen", "Novak", "Silva",
                                   "Okafor", "Larsen", "Moreau", "Tanaka", "Rossi"};

std::string padded(char prefix, std::size_t value, std::size_t width) {
  std::string digits = std::to_string(value);
  return prefix + std::string(width > digits.size() ? width - digits.size() : 0, '0') + digits;
}

std::size_t digit_count(std::size_t n) { return std::to_string(n).size(); }

// Samples an index with probability proportional to its weight; weights can
// be updated in O(log n).
class WeightedSampler {
 public:
  explicit WeightedSampler(std::size_t n) : tree_(n + 1, 0.0), weights_(n, 0.0) {
    for (std::size_t step = 1; step < n + 1; step <<= 1) top_ = step;
  }

  void set(std::size_t i, double w) {
    const double delta = w - weights_[i];
    weights_[i] = w;
    for (std::size_t k = i + 1; k < tree_.size(); k += k & (~k + 1)) tree_[k] += delta;
  }

  template <class Rng>
  std::size_t sample(Rng& rng) const {
    double total = 0.0;
    for (std::size_t k = tree_.size() - 1; k > 0; k -= k & (~k + 1)) total += tree_[k];
    double target = std::uniform_real_distribution<double>(0.0, total)(rng);
    std::size_t pos = 0;
    for (std::size_t step = top_; step > 0; step >>= 1) {
      if (pos + step < tree_.size() && tree_[pos + step] <= target) {
        pos += step;
        target -= tree_[pos];
      }
    }
    return std::min(pos, weights_.size() - 1);
  }

 private:
  std::vector<double> tree_;
  std::vector<double> weights_;
  std::size_t top_ = 0;
};

struct PendingEdge {
  // Indices into the generator's node list.
  std::size_t a;
  std::size_t b;
  EdgeLabel label;
};

void validate(const GenConfig& c) {
  auto fraction = [](double v) { return v >= 0.0 && v <= 1.0; };
  if (c.company_count < 1 || c.person_count < 1) {
    throw Error(ErrorCode::InvalidConfig, "company and person counts must be at least 1");
  }
  if (!fraction(c.client_ratio) || !fraction(c.root_only_client_fraction) ||
      !fraction(c.former_role_fraction) || !fraction(c.board_role_fraction) || !fraction(c.signal)) {
    throw Error(ErrorCode::InvalidConfig, "ratios and fractions must lie in [0, 1]");
  }
  if (!(c.roles_per_person >= 1.0) || !(c.b2b_per_company >= 0.0) || !std::isfinite(c.attachment_exponent)) {
    throw Error(ErrorCode::InvalidConfig, "roles_per_person >= 1, b2b_per_company >= 0 required");
  }
}

}  // namespace

EcosystemGraph generate(const GenConfig& config) {
  validate(config);
  std::mt19937_64 rng(config.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto pick = [&](const auto& list) { return list[rng() % list.size()]; };

  const std::size_t companies = config.company_count;
  const std::size_t persons = config.person_count;
  const auto clients = static_cast<std::size_t>(std::llround(static_cast<double>(companies) * config.client_ratio));
  const auto root_only =
      static_cast<std::size_t>(std::llround(static_cast<double>(clients) * config.root_only_client_fraction));
  const std::size_t wired_clients = clients - root_only;

  // Generator-local node numbering: [0, companies) companies, then the root,
  // then persons.
  const std::size_t root = companies;
  const std::size_t first_person = companies + 1;

  std::vector<std::size_t> shuffled(companies);
  for (std::size_t i = 0; i < companies; ++i) shuffled[i] = i;
  std::shuffle(shuffled.begin(), shuffled.end(), rng);
  std::vector<std::uint8_t> is_root_only(companies, 0);
  for (std::size_t i = 0; i < root_only; ++i) is_root_only[shuffled[i]] = 1;
  std::vector<std::size_t> wired;  // companies that receive job-role and B2B edges
  for (std::size_t i = 0; i < companies; ++i) {
    if (!is_root_only[i]) wired.push_back(i);
  }

  // Slot w < wired.size() is wired[w]; the last slot is the root.
  const std::size_t slots = wired.size() + 1;
  auto slot_node = [&](std::size_t slot) { return slot == wired.size() ? root : wired[slot]; };
  std::vector<std::size_t> degree(slots, 0);
  WeightedSampler sampler(slots);
  auto weight_of = [&](std::size_t d) { return std::pow(static_cast<double>(d) + 1.0, config.attachment_exponent); };
  for (std::size_t s = 0; s < slots; ++s) sampler.set(s, weight_of(0));
  auto bump = [&](std::size_t slot) { sampler.set(slot, weight_of(++degree[slot])); };

  std::vector<PendingEdge> edges;
  edges.reserve(static_cast<std::size_t>(static_cast<double>(persons) * config.roles_per_person +
                                         static_cast<double>(wired.size()) * config.b2b_per_company) +
                clients + 16);

  std::poisson_distribution<int> extra_roles(std::max(config.roles_per_person - 1.0, 1e-9));
  for (std::size_t p = 0; p < persons; ++p) {
    const int roles = 1 + (config.roles_per_person > 1.0 ? extra_roles(rng) : 0);
    for (int r = 0; r < roles; ++r) {
      const std::size_t slot = sampler.sample(rng);
      bump(slot);
      const JobRole role = unit(rng) < config.board_role_fraction ? JobRole::BoardMember : JobRole::Executive;
      const Tense tense = unit(rng) < config.former_role_fraction ? Tense::Former : Tense::Current;
      edges.push_back({first_person + p, slot_node(slot), EdgeLabel::job_role(role, tense)});
    }
  }

  if (config.b2b_per_company > 0.0 && slots > 1) {
    constexpr std::array kTypes = {B2bType::Kind::Sponsor, B2bType::Kind::Subsidiary, B2bType::Kind::Investor};
    constexpr std::array kStates = {B2bState::Kind::Active, B2bState::Kind::Active, B2bState::Kind::Active,
                                    B2bState::Kind::Pending, B2bState::Kind::Cancelled, B2bState::Kind::Prior};
    std::poisson_distribution<int> b2b_count(config.b2b_per_company);
    for (std::size_t w = 0; w < wired.size(); ++w) {
      const int count = b2b_count(rng);
      for (int k = 0; k < count; ++k) {
        std::size_t other = sampler.sample(rng);
        for (int retry = 0; other == w && retry < 8; ++retry) other = sampler.sample(rng);
        if (other == w) continue;
        bump(w);
        bump(other);
        edges.push_back({wired[w], slot_node(other),
                         EdgeLabel::b2b(B2bType{pick(kTypes), {}}, B2bState{pick(kStates), {}})});
      }
    }
  }

  // Neighbour lists over generator-local nodes, for picking wired clients.
  const std::size_t total_nodes = first_person + persons;
  std::vector<std::vector<std::size_t>> nbrs(total_nodes);
  for (const PendingEdge& e : edges) {
    nbrs[e.a].push_back(e.b);
    nbrs[e.b].push_back(e.a);
  }

  std::vector<std::uint8_t> is_client(companies, 0);
  std::vector<std::size_t> pool;
  constexpr std::size_t kExpansionCap = 64;
  auto expand = [&](std::size_t x) {
    std::size_t pushed = 0;
    for (std::size_t y : nbrs[x]) {
      if (pushed >= kExpansionCap) return;
      if (y < companies) {
        pool.push_back(y);
        ++pushed;
      } else if (y >= first_person) {
        for (std::size_t z : nbrs[y]) {
          if (z < companies && z != x && pushed < kExpansionCap) {
            pool.push_back(z);
            ++pushed;
          }
        }
      }
    }
  };
  expand(root);

  for (std::size_t chosen = 0; chosen < wired_clients;) {
    std::size_t candidate = companies;
    if (unit(rng) < config.signal) {
      while (!pool.empty()) {
        const std::size_t at = rng() % pool.size();
        const std::size_t c = pool[at];
        pool[at] = pool.back();
        pool.pop_back();
        if (!is_client[c] && !is_root_only[c]) {
          candidate = c;
          break;
        }
      }
    }
    if (candidate == companies) {
      do {
        candidate = wired[rng() % wired.size()];
      } while (is_client[candidate]);
    }
    is_client[candidate] = 1;
    ++chosen;
    expand(candidate);
  }
  for (std::size_t c = 0; c < companies; ++c) {
    if (is_root_only[c]) is_client[c] = 1;
  }
  for (std::size_t c = 0; c < companies; ++c) {
    if (is_client[c]) edges.push_back({root, c, EdgeLabel::client()});
  }

  // Materialise ids, names and attributes.
  const std::size_t company_width = digit_count(companies);
  const std::size_t person_width = digit_count(persons);
  const std::size_t edge_width = digit_count(edges.size());
  std::vector<std::string> ids(total_nodes);
  GraphBuilder builder;
  builder.reserve(total_nodes, edges.size());
  for (std::size_t c = 0; c < companies; ++c) {
    ids[c] = padded('C', c + 1, company_width);
    Node node;
    node.id = ids[c];
    node.kind = NodeKind::Company;
    node.name = std::string(pick(kAdjectives)) + pick(kNouns) + " " + pick(kSuffixes);
    const std::string city = pick(kCities);
    node.description = std::string("Company active in ") + pick(kSectors) + ", based in " + city + ".";
    node.attrs["location"] = city;
    node.attrs["status"] = unit(rng) < 0.85 ? "active" : "inactive";
    node.attrs["year_founded"] = std::to_string(1900 + rng() % 120);
    builder.add_node(std::move(node));
  }
  ids[root] = kGeneratedRootId;
  {
    Node node;
    node.id = ids[root];
    node.kind = NodeKind::Company;
    node.name = "Root Company";
    node.description = "The seller's own organisation.";
    builder.add_node(std::move(node));
  }
  for (std::size_t p = 0; p < persons; ++p) {
    const std::size_t local = first_person + p;
    ids[local] = padded('P', p + 1, person_width);
    Node node;
    node.id = ids[local];
    node.kind = NodeKind::Person;
    node.name = std::string(pick(kFirstNames)) + " " + pick(kLastNames);
    node.description = "Professional with " + std::to_string(nbrs[local].size()) + " recorded roles.";
    builder.add_node(std::move(node));
  }
  for (std::size_t i = 0; i < edges.size(); ++i) {
    PendingEdge& e = edges[i];
    builder.add_edge({padded('E', i + 1, edge_width), ids[e.a], ids[e.b], std::move(e.label), 1.0, 1.0});
  }
  builder.set_root(kGeneratedRootId);
  return std::move(builder).build();
}

}  // namespace clientnet
