#pragma once

#include <cstddef>
#include <cstdint>

#include "clientnet/graph.hpp"

namespace clientnet {

struct GenConfig {
  // Companies other than the root.
  std::size_t company_count = 150;
  std::size_t person_count = 75;
  // Share of companies that are clients (1 client per 14 non-clients).
  double client_ratio = 1.0 / 15.0;
  // Share of clients whose only link is their client edge.
  double root_only_client_fraction = 0.5;

  // Mean job roles per person; every person holds at least one.
  double roles_per_person = 3.0;
  double former_role_fraction = 0.4;
  double board_role_fraction = 0.3;
  // Mean B2B edges started by each wired company.
  double b2b_per_company = 1.0;

  // Companies are picked for new edges with probability proportional to
  // (degree + 1) ^ attachment_exponent.
  double attachment_exponent = 1.0;

  // Probability that the next wired client is drawn from the two-hop
  // neighbourhood of the root and the clients chosen so far, instead of
  // uniformly. This plants the structure link prediction is meant to find.
  double signal = 0.8;

  std::uint64_t seed = 1;
};

// Root id of generated graphs.
inline constexpr const char* kGeneratedRootId = "ROOT";

// Throws InvalidConfig.
EcosystemGraph generate(const GenConfig& config);

}  // namespace clientnet
